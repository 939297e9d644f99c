"""Three small languages, checked on lasso words.

Run with ``python demos/01_languages.py``. Each block prints what the
evaluator says and, where a quantifier is involved, which x decided it.
"""

from tel import EvalConfig, Evaluator, parse_formula, parse_word
from tel.words import Alphabet

# %% a^n b^n c^n a^n, followed by anything
blocks = parse_formula("exists x . [x] a & ([x] b) @ x & ([x] c) @ (2*x) & ([x] a) @ (3*x)")
for n in range(1, 5):
    text = "a" * n + "b" * n + "c" * n + "a" * n
    w = parse_word(";".join(text) + " | b")
    print(f"{text:<18}", *Evaluator(w, blocks).witness(1))

broken = parse_word("a;a;b;c;c;c;a;a | b")
print(f"{'aabcccaa':<18}", Evaluator(broken, blocks).witness(1)[0])

# %% doubling schedule: an a at k+1 forces b's, then an a at 2k+2
ab = Alphabet.letters("ab")
doubling = parse_formula("forall x . a @ x -> ([x] b) @ (x + 1) & a @ (2*x + 1)")
schedule = "bbba" + "".join("b" * (2**n - 1) + "a" for n in range(2, 7))
print(f"\nschedule length {len(schedule)}, a's at",
      [i + 1 for i, c in enumerate(schedule) if c == "a"])

w = parse_word(";".join(schedule) + " | b", ab)
for bound in (16, 32, 64):
    cfg = EvalConfig(quant_bound=bound, lasso_exact=False)
    print(f"  B={bound:<3} literal bound ->", Evaluator(w, doubling, cfg).witness(1)[0])

cut = parse_word(";".join(schedule[:32]) + " | b", ab)
print("  cut after the a at 32 ->", *Evaluator(cut, doubling).witness(1))

# %% squares: w w, then a free letter, then c
squares = parse_formula("exists x . c @ (2*x + 1) & [x] ((a -> a @ x) & (b -> b @ x) & !c)")
for text in ("abab", "aabaab", "abba", "ababa"):
    w = parse_word(";".join(text + "c") + " | c")
    print(f"{text + 'c':<8}", *Evaluator(w, squares).witness(1))
