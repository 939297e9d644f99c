"""Seeded random generators for formulas, words and front-end formulas.

Acceptance tests drive these with a fixed ``random.Random``; the property
tests wrap them as hypothesis strategies through ``st.randoms()``.
"""

from __future__ import annotations

import random

from hypothesis import strategies as st

from tel.core import And, Atom, Box, Const, Diamond, Exists, Forall, Not, Or, Shift, Var
from tel.translate import ast as T
from tel.words import Alphabet, LassoWord

LETTERS3 = Alphabet.letters("abc")
PROPS2 = Alphabet.props("pq")
VARS = ("x", "y", "z")


def gen_term(rng: random.Random, scope: tuple[str, ...], max_const: int = 3):
    roll = rng.random()
    if scope and roll < 0.45:
        t = Var(rng.choice(scope))
        if rng.random() < 0.3:
            t = t + rng.randint(1, 2)
        return t
    if roll < 0.55:
        return Const(rng.randint(1, 2)) + Const(rng.randint(1, 2))
    return Const(rng.randint(1, max_const))


def gen_formula(
    rng: random.Random,
    depth: int,
    symbols=("a", "b", "c"),
    scope: tuple[str, ...] = (),
    quantifiers: int = 2,
):
    """Random formula of depth at most ``depth`` with free vars in ``scope``."""
    if depth <= 0 or rng.random() < 0.15:
        return Atom(rng.choice(symbols))
    kinds = ["not", "and", "or", "shift", "box", "diamond"]
    if quantifiers > 0:
        kinds += ["exists", "forall"]
    kind = rng.choice(kinds)
    sub = lambda s=scope, q=quantifiers: gen_formula(rng, depth - 1, symbols, s, q)  # noqa: E731
    match kind:
        case "not":
            return Not(sub())
        case "and":
            return And(sub(), sub())
        case "or":
            return Or(sub(), sub())
        case "shift":
            return Shift(sub(), gen_term(rng, scope))
        case "box":
            return Box(gen_term(rng, scope), sub())
        case "diamond":
            return Diamond(gen_term(rng, scope), sub())
    x = rng.choice(VARS)
    body = sub(tuple(dict.fromkeys(scope + (x,))), quantifiers - 1)
    return (Exists if kind == "exists" else Forall)(x, body)


def gen_lasso(rng: random.Random, alphabet: Alphabet = LETTERS3, max_prefix: int = 5, max_loop: int = 5):
    ell = rng.randint(0, max_prefix)
    p = rng.randint(1, max_loop)
    return LassoWord(tuple(_pos(rng, alphabet) for _ in range(ell)), tuple(_pos(rng, alphabet) for _ in range(p)), alphabet)


def _pos(rng, alphabet):
    if alphabet.mode == "letters":
        return rng.choice(alphabet.symbols)
    return frozenset(s for s in alphabet.symbols if rng.random() < 0.5)


def gen_env(rng, names):
    return {x: rng.randint(1, 4) for x in names}


def gen_ltl(rng: random.Random, depth: int, symbols=("a", "b", "c")):
    if depth <= 0 or rng.random() < 0.2:
        return T.LAtom(rng.choice(symbols))
    sub = lambda: gen_ltl(rng, depth - 1, symbols)  # noqa: E731
    unary = [T.LNot, T.Next, T.Finally, T.Globally]
    binary = [T.LAnd, T.LOr, T.Until, T.WeakUntil, T.StrongRelease, T.Release]
    if rng.random() < 0.4:
        return rng.choice(unary)(sub())
    return rng.choice(binary)(sub(), sub())


def gen_tcl_operand(rng: random.Random, depth: int = 2, symbols=("p", "q")):
    if depth <= 0 or rng.random() < 0.4:
        return T.TAtom(rng.choice(symbols))
    match rng.choice(["not", "and", "or"]):
        case "not":
            return T.TNot(gen_tcl_operand(rng, depth - 1, symbols))
        case "and":
            return T.TAnd(gen_tcl_operand(rng, depth - 1, symbols), gen_tcl_operand(rng, depth - 1, symbols))
    return T.TOr(gen_tcl_operand(rng, depth - 1, symbols), gen_tcl_operand(rng, depth - 1, symbols))


# ---- hypothesis wrappers

def formulas(depth=4, symbols=("a", "b", "c"), scope=(), quantifiers=2):
    return st.randoms(use_true_random=False).map(lambda r: gen_formula(r, depth, symbols, scope, quantifiers))


def lassos(alphabet=LETTERS3, max_prefix=5, max_loop=5):
    return st.randoms(use_true_random=False).map(lambda r: gen_lasso(r, alphabet, max_prefix, max_loop))


def ltl_formulas(depth=4, symbols=("a", "b", "c")):
    return st.randoms(use_true_random=False).map(lambda r: gen_ltl(r, depth, symbols))


# ---- three worked languages: blocks, doubling schedule, squares

BLOCKS = "exists x . [x] a & ([x] b) @ x & ([x] c) @ (2*x) & ([x] a) @ (3*x)"
DOUBLING = "forall x . a @ x -> ([x] b) @ (x + 1) & a @ (2*x + 1)"
SQUARES = "exists x . c @ (2*x + 1) & [x] ((a -> a @ x) & (b -> b @ x) & !c)"
