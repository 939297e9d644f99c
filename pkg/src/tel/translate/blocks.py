"""Block templates: chains of consecutive monochromatic windows."""

from __future__ import annotations

from typing import Sequence

from .. import core
from ..core import Box, Exists, Formula, FreshNames, Shift, Var
from ..errors import EmptyBlock


def _offset(names: Sequence[str]):
    t = Var(names[0])
    for n in names[1:]:
        t = t + Var(n)
    return t


def _fresh_for(parts: Sequence[Formula]) -> FreshNames:
    used = set()
    for p in parts:
        used |= core.all_vars(p)
    return FreshNames(used, prefix="x")


def _chain(windows: list[Formula], names: list[str]) -> Formula:
    """``w1 & w2 @ x1 & w3 @ (x1 + x2) & ...``"""
    conjuncts = [windows[0]]
    for n, w in enumerate(windows[1:], start=1):
        conjuncts.append(Shift(w, _offset(names[:n])))
    return core.conj(conjuncts)


def block_closed(parts: Sequence[Formula]) -> Formula:
    """``exists x1..xn . [x1] f1 & ([x2] f2) @ x1 & ...``: n adjacent windows."""
    parts = list(parts)
    if not parts:
        raise EmptyBlock("a block needs at least one formula")
    fresh = _fresh_for(parts)
    names = [fresh() for _ in parts]
    out = _chain([Box(Var(x), p) for x, p in zip(names, parts)], names)
    for x in reversed(names):
        out = Exists(x, out)
    return out


def block_open(parts: Sequence[Formula]) -> Formula:
    """Like :func:`block_closed` but the last window extends forever."""
    parts = list(parts)
    if not parts:
        raise EmptyBlock("a block needs at least one formula")
    fresh = _fresh_for(parts)
    names = [fresh() for _ in parts[:-1]]
    windows = [Box(Var(x), p) for x, p in zip(names, parts)]
    windows.append(core.box_inf(parts[-1], FreshNames(set(fresh.used), prefix="y")))
    out = _chain(windows, names)
    for x in reversed(names):
        out = Exists(x, out)
    return out
