"""Buchi runs as tilings, then a domino problem as a formula.

The batch evaluator checks thousands of words at once: each word is a row
of letter codes, and truth comes back as a boolean numpy vector.
"""

import numpy as np

from tel import language_member
from tel.batch import BatchEvaluator
from tel.encode import BuchiAutomaton, PCPInstance, encode_buchi, pcp_encode, pcp_witness
from tel.syntax import print_formula
from tel.words import format_word

# %% "infinitely many a" over {a, b}
A = BuchiAutomaton(
    states=("q0", "q1"),
    alphabet=("a", "b"),
    initial="q0",
    transitions={("q0", "a", "q1"), ("q0", "b", "q0"), ("q1", "a", "q1"), ("q1", "b", "q0")},
    accepting={"q1"},
)
phi = encode_buchi(A)
tiles = A.tiles()
print("tiles:", tiles)
print("formula size:", len(print_formula(phi)), "characters")

# every lasso with prefix 2 and loop 3 over the 4 tiles
n, ell = 5, 2
codes = np.indices((len(tiles),) * n).reshape(n, -1).T.astype(np.int32)
accepted = BatchEvaluator.from_codes(codes, tiles, ell, phi).at(1)
print(f"{accepted.sum()} of {len(codes)} tile words are accepting runs")

letters = np.array([t.split("__")[1] for t in tiles])
loops_with_a = (letters[codes[:, ell:]] == "a").any(axis=1)
print("every accepted run loops through an a:", bool(np.all(loops_with_a[accepted])))
for row in codes[accepted][:3]:
    print("  ", " ".join(tiles[c] for c in row[:ell]), "|", " ".join(tiles[c] for c in row[ell:]))

# %% dominoes
inst = PCPInstance((("1", "101"), ("10", "00"), ("011", "11")))
solution = [1, 3, 2, 3]
print("\nsolves", solution, ":", inst.solves(solution))
phi = pcp_encode(inst)
w = pcp_witness(inst, solution)
print("witness:", format_word(w))
print("member:", language_member(w, phi))
print("a non-solution [1, 3]:", language_member(pcp_witness(inst, [1, 3]), phi))
