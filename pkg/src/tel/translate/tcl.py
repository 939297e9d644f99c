"""Allen-style interval operators: exact semantics and translation.

Each operator asks for consecutive non-empty segments starting at ``s``,
every one carrying a fixed Boolean combination of the operands, with the
last segment running forever.
"""

from __future__ import annotations

from ..core import And, Atom, Formula, Not, Or
from ..errors import ModeMismatch
from ..words import PROPS, LassoWord
from . import ast as T
from .blocks import block_open

# Segment patterns as (phi holds, psi holds) per segment.
_P, _NP = True, False
ROWS: dict[str, tuple[tuple[bool, bool], ...]] = {
    "A": ((_P, _NP), (_NP, _P), (_NP, _NP)),
    "L": ((_P, _NP), (_NP, _NP), (_NP, _P), (_NP, _NP)),
    "B": ((_P, _P), (_P, _NP), (_NP, _NP)),
    "E": ((_P, _NP), (_P, _P), (_NP, _NP)),
    "D": ((_P, _NP), (_P, _P), (_P, _NP), (_NP, _NP)),
    "O": ((_P, _NP), (_P, _P), (_NP, _P), (_NP, _NP)),
}


def truth_vector(w: LassoWord, phi: T.TCL) -> list:
    """Truth at canonical positions 1..l+p (index 0 unused)."""
    n = w.canonical_positions
    match phi:
        case T.TAtom(symbol):
            return [None] + [w.holds(symbol, j) for j in range(1, n + 1)]
        case T.TNot(body):
            v = truth_vector(w, body)
            return [None] + [not v[j] for j in range(1, n + 1)]
        case T.TAnd(left, right):
            a, b = truth_vector(w, left), truth_vector(w, right)
            return [None] + [a[j] and b[j] for j in range(1, n + 1)]
        case T.TOr(left, right):
            a, b = truth_vector(w, left), truth_vector(w, right)
            return [None] + [a[j] or b[j] for j in range(1, n + 1)]
        case T.Allen(kind, left, right):
            a, b = truth_vector(w, left), truth_vector(w, right)
            return [None] + [_pattern(w, j, a, b, ROWS[kind], None) for j in range(1, n + 1)]
    raise TypeError(f"not a TCL formula: {phi!r}")


def _pattern(w: LassoWord, s: int, a: list, b: list, row, horizon: int | None) -> bool:
    """Search boundaries s < b1 < ... within ``horizon`` matching ``row``."""
    ell, n = w.prefix_len, w.canonical_positions
    limit = n + 1 if horizon is None else horizon
    canon = w.canonical_position

    def seg_ok(j: int, want) -> bool:
        c = canon(j)
        return (a[c], b[c]) == want

    def tail_ok(start: int, want) -> bool:
        # every t >= start: remaining prefix positions and the whole loop
        return all(seg_ok(t, want) for t in range(start, ell + 1)) and all(
            seg_ok(t, want) for t in range(ell + 1, n + 1)
        )

    def search(start: int, idx: int) -> bool:
        if idx == len(row) - 1:
            return tail_ok(start, row[idx])
        for end in range(start + 1, limit + 1):
            if not seg_ok(end - 1, row[idx]):
                return False
            if search(end, idx + 1):
                return True
        return False

    return search(s, 0)


def tcl_eval(w: LassoWord, s: int, phi: T.TCL, horizon: int | None = None) -> bool:
    """Exact truth at ``s``; ``horizon`` overrides the boundary search limit."""
    if w.mode != PROPS:
        raise ModeMismatch("TCL is evaluated on proposition words")
    s = w.canonical_position(s)
    if horizon is None or not isinstance(phi, T.Allen):
        return truth_vector(w, phi)[s]
    a, b = truth_vector(w, phi.left), truth_vector(w, phi.right)
    return _pattern(w, s, a, b, ROWS[phi.kind], horizon)


def _cell(f: Formula, g: Formula, want) -> Formula:
    fa = f if want[0] else Not(f)
    ga = g if want[1] else Not(g)
    # the first component is the one that holds, as in the table rows
    if not want[0] and want[1]:
        return And(ga, fa)
    return And(fa, ga)


def tcl_to_tel(phi: T.TCL) -> Formula:
    """Translate bottom-up; each Allen operator becomes an open block."""
    match phi:
        case T.TAtom(symbol):
            return Atom(symbol)
        case T.TNot(body):
            return Not(tcl_to_tel(body))
        case T.TAnd(left, right):
            return And(tcl_to_tel(left), tcl_to_tel(right))
        case T.TOr(left, right):
            return Or(tcl_to_tel(left), tcl_to_tel(right))
        case T.Allen(kind, left, right):
            f, g = tcl_to_tel(left), tcl_to_tel(right)
            return block_open([_cell(f, g, want) for want in ROWS[kind]])
    raise TypeError(f"not a TCL formula: {phi!r}")


def row_formulas(kind: str, f: Formula, g: Formula) -> list[Formula]:
    return [_cell(f, g, want) for want in ROWS[kind]]

