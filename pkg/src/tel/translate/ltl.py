"""Reference LTL semantics on lasso words and the translation into TEL."""

from __future__ import annotations

from .. import core
from ..core import And, Box, Exists, Forall, Formula, FreshNames, Not, Or, Shift, Var
from ..words import LassoWord
from . import ast as T


def _successor(w: LassoWord):
    n = w.canonical_positions
    ell = w.prefix_len
    return [None] + [j + 1 if j < n else ell + 1 for j in range(1, n + 1)]


def _fixpoint(n: int, init: bool, step) -> list:
    """Iterate ``v[j] = step(j, v)`` over positions 1..n until stable."""
    v = [init] * (n + 1)
    while True:
        changed = False
        for j in range(n, 0, -1):
            new = step(j, v)
            if new != v[j]:
                v[j] = new
                changed = True
        if not changed:
            return v


def truth_vector(w: LassoWord, phi: T.LTL) -> list:
    """Truth of ``phi`` at canonical positions 1..l+p (index 0 unused)."""
    n = w.canonical_positions
    succ = _successor(w)
    rec = lambda f: truth_vector(w, f)  # noqa: E731
    match phi:
        case T.LAtom(symbol):
            return [None] + [w.holds(symbol, j) for j in range(1, n + 1)]
        case T.LNot(body):
            v = rec(body)
            return [None] + [not v[j] for j in range(1, n + 1)]
        case T.LAnd(left, right) | T.LOr(left, right):
            a, b = rec(left), rec(right)
            op = (lambda x, y: x and y) if isinstance(phi, T.LAnd) else (lambda x, y: x or y)
            return [None] + [op(a[j], b[j]) for j in range(1, n + 1)]
        case T.Next(body):
            v = rec(body)
            return [None] + [v[succ[j]] for j in range(1, n + 1)]
        case T.Finally(body):
            v = rec(body)
            return _fixpoint(n, False, lambda j, u: v[j] or u[succ[j]])
        case T.Globally(body):
            v = rec(body)
            return _fixpoint(n, True, lambda j, u: v[j] and u[succ[j]])
        case T.Until(left, right) | T.WeakUntil(left, right):
            a, b = rec(left), rec(right)
            init = isinstance(phi, T.WeakUntil)
            return _fixpoint(n, init, lambda j, u: b[j] or (a[j] and u[succ[j]]))
        case T.Release(left, right) | T.StrongRelease(left, right):
            a, b = rec(left), rec(right)
            init = isinstance(phi, T.Release)
            return _fixpoint(n, init, lambda j, u: b[j] and (a[j] or u[succ[j]]))
    raise TypeError(f"not an LTL formula: {phi!r}")


def ltl_eval(w: LassoWord, i: int, phi: T.LTL) -> bool:
    """Exact LTL truth at position ``i`` (least/greatest fixpoints on the lasso)."""
    return truth_vector(w, phi)[w.canonical_position(i)]


def ltl_to_tel(phi: T.LTL, fresh: FreshNames | None = None) -> Formula:
    """Translate LTL into TEL; each quantifier gets its own fresh variable."""
    fresh = fresh or FreshNames(prefix="x")
    tr = lambda f: ltl_to_tel(f, fresh)  # noqa: E731
    match phi:
        case T.LAtom(symbol):
            return core.Atom(symbol)
        case T.LNot(body):
            return Not(tr(body))
        case T.LAnd(left, right):
            return And(tr(left), tr(right))
        case T.LOr(left, right):
            return Or(tr(left), tr(right))
        case T.Next(body):
            return Shift(tr(body), core.Const(1))
        case T.Finally(body):
            f = tr(body)
            x = fresh()
            return Or(f, Exists(x, Shift(f, Var(x))))
        case T.Globally(body):
            f = tr(body)
            x = fresh()
            return And(f, Forall(x, Shift(f, Var(x))))
        case T.Until(left, right):
            return _until(tr(left), tr(right), fresh)
        case T.StrongRelease(left, right):
            return _strong_release(tr(left), tr(right), fresh)
        case T.WeakUntil(left, right):
            f, g = tr(left), tr(right)
            x = fresh()
            return Or(And(f, Forall(x, Shift(f, Var(x)))), _until(f, g, fresh))
        case T.Release(left, right):
            f, g = tr(left), tr(right)
            x = fresh()
            return Or(And(g, Forall(x, Shift(g, Var(x)))), _strong_release(f, g, fresh))
    raise TypeError(f"not an LTL formula: {phi!r}")


def _until(f: Formula, g: Formula, fresh: FreshNames) -> Formula:
    x = fresh()
    return Or(g, Exists(x, And(Shift(g, Var(x)), Box(Var(x), f))))


def _strong_release(f: Formula, g: Formula, fresh: FreshNames) -> Formula:
    x = fresh()
    both = And(f, g)
    return Or(both, Exists(x, And(Shift(both, Var(x)), Box(Var(x), g))))

