"""Rewriting formulas, and reading LTL and Allen relations as TEL.

Every rewrite below is checked against the evaluator on a handful of
random words, so the printed forms are not just pretty but equivalent.
"""

import random

from tel import eval, negation_free, normalize_shifts, parse_formula, parse_word, print_formula, simplify
from tel.rewrite import RewriteTrace, expand_constant_modalities
from tel.syntax import parse_ltl, parse_tcl
from tel.translate import ltl_eval, ltl_to_tel, tcl_eval, tcl_to_tel
from tel.words import Alphabet, LassoWord

abc = Alphabet.letters("abc")
rng = random.Random(0)
words = [
    LassoWord(tuple(rng.choice("abc") for _ in range(rng.randint(0, 4))),
              tuple(rng.choice("abc") for _ in range(rng.randint(1, 3))), abc)
    for _ in range(25)
]


def same(f, g):
    return all(eval(w, i, f) is eval(w, i, g) for w in words for i in range(1, 6))


# %% negation-free form over a finite alphabet
phi = parse_formula("!(<3> a | ([2] !b) @ 1)")
trace = RewriteTrace()
nf = negation_free(phi, abc, trace)
print(print_formula(phi), "\n  ->", print_formula(nf), "| equivalent:", same(phi, nf))
print("  rules used:", sorted({step.rule for step in trace.steps}))

# %% shifts and constant windows
phi = parse_formula("((a & b @ 2) @ 1) @ 3 | [1] <1> c")
for op in (normalize_shifts, simplify, expand_constant_modalities):
    out = op(phi)
    print(f"{op.__name__:<27}", print_formula(out), "| equivalent:", same(phi, out))

# %% LTL through TEL
for text in ("G (a -> X F b)", "a U (b & X c)", "F G c"):
    f = parse_ltl(text)
    tel = ltl_to_tel(f)
    agree = all(ltl_eval(w, i, f) is eval(w, i, tel).value3 for w in words for i in range(1, w.canonical_positions + 1))
    print(f"{text:<16} -> {print_formula(tel)}\n{'':16}    agrees on every word: {agree}")

# %% Allen relations on proposition sets
pq = Alphabet.props("pq")
meets = parse_tcl("p A q")
print("\np A q ->", print_formula(tcl_to_tel(meets)))
for text in ("{p};{p};{q} | {}", "{p};{p,q};{q} | {}", "{p};{};{q} | {}"):
    w = parse_word(text, pq)
    print(f"  {text:<22} direct: {tcl_eval(w, 1, meets)!s:<5} via TEL: {eval(w, 1, tcl_to_tel(meets))}")
