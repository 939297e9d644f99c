"""Post correspondence instances and word-sequence correspondence formulas.

Layout shared by every construction here::

    zone 1 (words / dominoes) . cent . zone 2 (solution string) . hash^omega

Leading letters of the zone-1 words carry one dot, those of zone 2 two.
The correspondence part quantifies ``z`` at the cent and addresses zone 2
from offset ``z + 1``.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .. import core
from ..core import And, Atom, Box, Exists, Forall, Formula, FreshNames, Shift, Var
from ..errors import BadIndex, BudgetExceeded, EmptyWord, EmptyWordSet, InvalidInstance, TelError
from ..words import Alphabet, LassoWord
from .tiles import (
    CENT,
    DOTTED,
    DOUBLE,
    FILLER,
    HASH,
    PLAIN,
    any_of,
    dotted_word,
    mirror,
    product,
    tree_size,
    word_block,
)

DEFAULT_BUDGET = 10**6

BITS = ("0", "1")

x, y, z, s, t = (Var(n) for n in "xyzst")


class Variant(enum.Enum):
    EXACT = "exact"
    COUNT_ONLY = "count-only"


# --------------------------------------------------------------------------
# instances
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PCPInstance:
    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        pairs = tuple((str(u), str(v)) for u, v in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise InvalidInstance("an instance needs at least one pair")
        for u, v in pairs:
            if not u or not v:
                raise InvalidInstance("pair words must be non-empty")
            if set(u + v) - set(BITS):
                raise InvalidInstance(f"pair ({u}, {v}) is not over 0/1")

    def __len__(self) -> int:
        return len(self.pairs)

    def width(self, i: int) -> int:
        u, v = self.pairs[i]
        return max(len(u), len(v))

    def domino(self, i: int) -> list[str]:
        """Columns of pair ``i`` (0-based) as product letters."""
        u, v = self.pairs[i]
        return [product(_cell(u, j), _cell(v, j)) for j in range(self.width(i))]

    def solves(self, indices: Sequence[int]) -> bool:
        self._check(indices)
        top = "".join(self.pairs[i - 1][0] for i in indices)
        bottom = "".join(self.pairs[i - 1][1] for i in indices)
        return top == bottom

    def _check(self, indices: Sequence[int]):
        if not indices:
            raise BadIndex("index sequence must be non-empty")
        for i in indices:
            if not isinstance(i, int) or not 1 <= i <= len(self.pairs):
                raise BadIndex(f"index {i!r} outside 1..{len(self.pairs)}")

    def to_json(self) -> dict:
        return {"pairs": [list(p) for p in self.pairs]}

    @classmethod
    def from_json(cls, data: dict) -> "PCPInstance":
        try:
            return cls(tuple(tuple(p) for p in data["pairs"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInstance(f"bad instance description: {exc}") from exc

    @classmethod
    def load(cls, path: str | Path) -> "PCPInstance":
        with open(path, encoding="utf-8") as fh:
            try:
                return cls.from_json(json.load(fh))
            except json.JSONDecodeError as exc:
                raise TelError(f"{path}: {exc}") from exc


def _cell(word: str, j: int) -> str:
    if j >= len(word):
        return FILLER
    return mirror(word[j], DOTTED if j == 0 else PLAIN)


PLAIN_BITS = [mirror(b) for b in BITS]
DOT_BITS = [mirror(b, DOTTED) for b in BITS]
DOUBLE_BITS = [mirror(b, DOUBLE) for b in BITS]
COMPONENTS = PLAIN_BITS + DOT_BITS + DOUBLE_BITS + [FILLER]


def pcp_alphabet() -> Alphabet:
    return Alphabet.letters([product(a, b) for a in COMPONENTS for b in COMPONENTS] + [CENT, HASH])


def _pairs(tops, bottoms) -> list[str]:
    return [product(a, b) for a in tops for b in bottoms]


ZONE1 = _pairs(PLAIN_BITS + [FILLER], PLAIN_BITS + [FILLER]) + _pairs(DOT_BITS, DOT_BITS)
ZONE2 = _pairs(PLAIN_BITS + DOUBLE_BITS, PLAIN_BITS + DOUBLE_BITS)
LEADING = _pairs(DOT_BITS, DOT_BITS)
# zone-2 letters opening a top (index 0) or bottom (index 1) segment
_ZONE2_LEADS = (
    _pairs(DOUBLE_BITS, PLAIN_BITS + DOUBLE_BITS),
    _pairs(PLAIN_BITS + DOUBLE_BITS, DOUBLE_BITS),
)
AGREE = [
    product(a, b)
    for bit in BITS
    for a in (mirror(bit), mirror(bit, DOUBLE))
    for b in (mirror(bit), mirror(bit, DOUBLE))
]


# --------------------------------------------------------------------------
# shared pieces
# --------------------------------------------------------------------------


def _hash_tail() -> Formula:
    return core.box_inf(Atom(HASH), FreshNames(prefix="w"))


def _layout(zone1: Formula, zone2: Formula, tiling: Formula, zone2_extra: Formula) -> Formula:
    """``exists x y`` over the three-zone layout with cent at x+1, hash from x+y+2."""
    body = core.conj(
        [
            Shift(Atom(CENT), x),
            Shift(Atom(HASH), x + y + 1),
            Box(x, zone1),
            Shift(Box(y, zone2), x + 1),
            Shift(_hash_tail(), x + y + 1),
            tiling,
            zone2_extra,
        ]
    )
    return Exists("x", Exists("y", body))


def _tiling(starts: list[Formula], widths: list[int], leading: Formula, end: Formula, window) -> Formula:
    """First word is a member, and every leading letter opens a member followed by a leader or ``end``."""
    follow = core.Or(leading, end)
    opened = core.disj([And(b, Shift(follow, core.Const(k))) for b, k in zip(starts, widths)])
    return And(core.disj(starts), Box(window, core.implies(leading, opened)))


def _correspondence(lhs, rtarget, rhs, ltarget, extra=()) -> Formula:
    """The cent-anchored matching conditions between zone 1 and zone 2.

    ``lhs[i]`` recognises item i in zone 1 and ``rtarget[i]`` what it must
    meet in zone 2; ``rhs``/``ltarget`` give the reverse direction.
    """
    n = len(lhs)
    second = z + 1
    parts: list[Formula] = [Shift(Atom(CENT), z)]
    for i in range(n):
        parts.append(core.implies(lhs[i], Shift(rtarget[i], second)))
        parts.append(core.implies(Shift(rhs[i], second), ltarget[i]))
    for i in range(n):
        later = core.conj(
            Forall("s", core.implies(Shift(lhs[j], x + s), Exists("t", Shift(rtarget[j], y + second + t))))
            for j in range(n)
        )
        inner = Exists("y", And(Shift(rtarget[i], y + second), later))
        parts.append(Forall("x", core.implies(Shift(lhs[i], x), inner)))
    for i in range(n):
        later = core.conj(
            Forall("s", core.implies(Shift(rhs[j], x + second + s), Exists("t", Shift(ltarget[j], t + y))))
            for j in range(n)
        )
        inner = Exists("y", And(Shift(ltarget[i], y), later))
        parts.append(Forall("x", core.implies(Shift(rhs[i], x + second), inner)))
    parts.extend(extra)
    return Exists("z", core.conj(parts))


def _check_budget(phi: Formula, budget: int | None) -> Formula:
    if budget is not None:
        n = tree_size(phi, budget)
        if n > budget:
            raise BudgetExceeded(f"generated formula has more than {budget} nodes")
    return phi


# --------------------------------------------------------------------------
# word-sequence correspondence
# --------------------------------------------------------------------------


def _word_set(W) -> list[tuple[str, ...]]:
    words = [tuple(w) for w in W]
    if not words:
        raise EmptyWordSet("the word set must be non-empty")
    if any(not w for w in words):
        raise EmptyWord("words in the set must be non-empty")
    return list(dict.fromkeys(words))


def correspondence_alphabet(W) -> Alphabet:
    letters = sorted({c for w in _word_set(W) for c in w})
    names = [mirror(c, lvl) for lvl in (PLAIN, DOTTED, DOUBLE) for c in letters] + [CENT, HASH]
    if len(set(names)) != len(names):
        raise TelError("letter names collide with their mirror copies")
    return Alphabet.letters(names)


def lemma_correspondence(W, variant: Variant | str = Variant.EXACT, budget: int | None = DEFAULT_BUDGET) -> Formula:
    """Layout plus matching between the dotted and double-dotted word sequences.

    EXACT also pins each zone-1 start to the zone-2 position at the same
    distance from the cent, so the two sequences must agree word by word.
    """
    variant = Variant(variant)
    words = _word_set(W)
    correspondence_alphabet(words)
    letters = sorted({c for w in words for c in w})
    plain = [mirror(c) for c in letters]
    one = [mirror(c, DOTTED) for c in letters]
    two = [mirror(c, DOUBLE) for c in letters]
    widths = [len(w) for w in words]
    dot = [word_block(dotted_word(w, DOTTED)) for w in words]
    ddot = [word_block(dotted_word(w, DOUBLE)) for w in words]

    zone2_tiling = Shift(_tiling(ddot, widths, any_of(two), Atom(HASH), y), x + 1)
    phi1 = _layout(
        any_of(plain + one),
        any_of(plain + two),
        _tiling(dot, widths, any_of(one), Atom(CENT), x),
        zone2_tiling,
    )
    if variant is Variant.EXACT:
        align = [
            Forall("x", core.And(
                core.implies(Shift(d, x), Shift(dd, x + z + 1)),
                core.implies(Shift(dd, x + z + 1), Shift(d, x)),
            ))
            for d, dd in zip(dot, ddot)
        ]
        phi2 = _correspondence(dot, ddot, ddot, dot, align)
    else:
        chi1 = _is_a_word(dot, widths, any_of(one), Atom(CENT))
        chi2 = _is_a_word(ddot, widths, any_of(two), Atom(HASH))
        n = len(words)
        phi2 = _correspondence(dot, [chi2] * n, ddot, [chi1] * n)
    return _check_budget(And(phi1, phi2), budget)


def _is_a_word(starts, widths, leading, end) -> Formula:
    follow = core.Or(leading, end)
    return core.disj([And(b, Shift(follow, core.Const(k))) for b, k in zip(starts, widths)])


def correspondence_word(W, first: Sequence[int], second: Sequence[int]) -> LassoWord:
    """``u_1..u_l cent v_1..v_m hash^omega`` for 1-based indices into ``W``."""
    words = _word_set(W)
    alphabet = correspondence_alphabet(words)
    for i in list(first) + list(second):
        if not 1 <= i <= len(words):
            raise BadIndex(f"index {i!r} outside 1..{len(words)}")
    prefix = [c for i in first for c in dotted_word(words[i - 1], DOTTED)] + [CENT]
    prefix += [c for i in second for c in dotted_word(words[i - 1], DOUBLE)] + [HASH]
    return LassoWord(tuple(prefix), (HASH,), alphabet)


# --------------------------------------------------------------------------
# PCP
# --------------------------------------------------------------------------


def _row_matcher(word: str, row: int, budget: int | None) -> Formula:
    """All zone-2 segments whose ``row`` spells ``word`` with a double-dotted lead.

    The other row ranges freely over plain and double-dotted bits, one
    disjunct per decoration.
    """
    n = len(word)
    if budget is not None and (4**n) * (2 * n) > budget:
        raise BudgetExceeded(f"matcher for {word!r} has {4**n} disjuncts")
    fixed = [mirror(word[0], DOUBLE)] + [mirror(c) for c in word[1:]]
    free = PLAIN_BITS + DOUBLE_BITS
    disjuncts = []
    for other in itertools.product(free, repeat=n):
        cells = [product(f, o) if row == 0 else product(o, f) for f, o in zip(fixed, other)]
        disjuncts.append(word_block(cells))
    return core.disj(disjuncts)


def pcp_encode(inst: PCPInstance, budget: int | None = DEFAULT_BUDGET, printed: bool = False) -> Formula:
    """Layout and tiling, top-row correspondence and bottom-row correspondence.

    By default every domino and segment recogniser also checks what follows
    it (the next leading letter, cent or hash) and the reverse implications
    accept any pair with the same row word. Without that, pairs whose rows
    are equal or prefixes of one another make correct witnesses fail.
    ``printed=True`` keeps the bare recognisers.
    """
    m = len(inst)
    starts = [word_block(inst.domino(i)) for i in range(m)]
    widths = [inst.width(i) for i in range(m)]
    phi1 = _layout(
        any_of(ZONE1),
        any_of(ZONE2),
        _tiling(starts, widths, any_of(LEADING), Atom(CENT), x),
        Shift(Box(y, any_of(AGREE)), x + 1),
    )
    rows = []
    for r in (0, 1):
        matchers = [_row_matcher(pair[r], r, budget) for pair in inst.pairs]
        if printed:
            rows.append(_correspondence(starts, matchers, matchers, starts))
            continue
        follow = core.Or(any_of(LEADING), Atom(CENT))
        dominoes = [And(b, Shift(follow, core.Const(k))) for b, k in zip(starts, widths)]
        ends = core.Or(any_of(_ZONE2_LEADS[r]), Atom(HASH))
        segments = [And(mt, Shift(ends, core.Const(len(pair[r])))) for mt, pair in zip(matchers, inst.pairs)]
        same_row = [
            core.disj([dominoes[j] for j in range(m) if inst.pairs[j][r] == inst.pairs[i][r]])
            for i in range(m)
        ]
        rows.append(_correspondence(dominoes, segments, segments, same_row))
    return _check_budget(core.conj([phi1, *rows]), budget)


def solution_rows(inst: PCPInstance, indices: Sequence[int]) -> tuple[list[str], list[str]]:
    """Zone-2 top and bottom rows for ``indices``, padded with filler."""
    inst._check(indices)
    rows = []
    for r in (0, 1):
        row = []
        for i in indices:
            word = inst.pairs[i - 1][r]
            row += [mirror(word[0], DOUBLE)] + [mirror(c) for c in word[1:]]
        rows.append(row)
    n = max(map(len, rows))
    return [row + [FILLER] * (n - len(row)) for row in rows]


def pcp_witness(inst: PCPInstance, indices: Sequence[int]) -> LassoWord:
    """Dominoes, cent, the paired solution string, hash, then hash forever.

    A non-solving sequence still yields a word; it just fails the encoding.
    """
    indices = list(indices)
    inst._check(indices)
    zone1 = [c for i in indices for c in inst.domino(i - 1)]
    top, bottom = solution_rows(inst, indices)
    zone2 = [product(a, b) for a, b in zip(top, bottom)]
    return LassoWord(tuple(zone1 + [CENT] + zone2 + [HASH]), (HASH,), pcp_alphabet())
