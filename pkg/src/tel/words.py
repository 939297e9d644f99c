"""Finite traces and ultimately periodic words ``prefix . loop^omega``.

Positions are 1-indexed. In letters mode each position carries exactly one
symbol of the alphabet; in props mode it carries a (possibly empty) set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ModeMismatch, SourceSpan, TelError, TelSyntaxError

LETTERS = "letters"
PROPS = "props"

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]
    mode: str = LETTERS

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if not self.symbols:
            raise TelError("alphabet must not be empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise TelError("alphabet symbols must be unique")
        if self.mode not in (LETTERS, PROPS):
            raise TelError(f"unknown alphabet mode {self.mode!r}")
        for s in self.symbols:
            if not _IDENT.match(s):
                raise TelError(f"not an identifier: {s!r}")

    @classmethod
    def letters(cls, symbols: Iterable[str]) -> "Alphabet":
        return cls(tuple(symbols), LETTERS)

    @classmethod
    def props(cls, symbols: Iterable[str]) -> "Alphabet":
        return cls(tuple(symbols), PROPS)

    def __contains__(self, symbol) -> bool:
        return symbol in self.symbols

    def union(self, symbols: Iterable[str]) -> "Alphabet":
        extra = [s for s in dict.fromkeys(symbols) if s not in self.symbols]
        return Alphabet(self.symbols + tuple(extra), self.mode)


def _check_position(pos, alphabet: Alphabet):
    if alphabet.mode == LETTERS:
        if not isinstance(pos, str):
            raise ModeMismatch(f"letters-mode position must be a symbol, got {pos!r}")
        if pos not in alphabet:
            raise TelError(f"letter {pos!r} not in alphabet")
        return pos
    if isinstance(pos, str):
        raise ModeMismatch(f"props-mode position must be a set, got {pos!r}")
    pos = frozenset(pos)
    bad = pos - set(alphabet.symbols)
    if bad:
        raise TelError(f"propositions {sorted(bad)} not in alphabet")
    return pos


@dataclass(frozen=True)
class FiniteTrace:
    positions: tuple
    alphabet: Alphabet

    def __post_init__(self):
        if not self.positions:
            raise TelError("a trace has at least one position")
        object.__setattr__(
            self,
            "positions",
            tuple(_check_position(p, self.alphabet) for p in self.positions),
        )

    def __len__(self) -> int:
        return len(self.positions)


@dataclass(frozen=True)
class LassoWord:
    """The omega-word ``prefix . loop . loop . ...``."""

    prefix: tuple
    loop: tuple
    alphabet: Alphabet
    _all: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.loop:
            raise TelError("loop must be non-empty")
        prefix = tuple(_check_position(p, self.alphabet) for p in self.prefix)
        loop = tuple(_check_position(p, self.alphabet) for p in self.loop)
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "loop", loop)
        object.__setattr__(self, "_all", prefix + loop)

    @property
    def mode(self) -> str:
        return self.alphabet.mode

    @property
    def prefix_len(self) -> int:
        return len(self.prefix)

    @property
    def period(self) -> int:
        return len(self.loop)

    @property
    def canonical_positions(self) -> int:
        """Number of distinct suffixes, ``len(prefix) + len(loop)``."""
        return len(self._all)

    def canonical_position(self, i: int) -> int:
        return canonical_position(self, i)

    def letter_at(self, i: int):
        return self._all[canonical_position(self, i) - 1]

    def holds(self, symbol: str, i: int) -> bool:
        """Does atom ``symbol`` hold at position ``i``?"""
        pos = self._all[canonical_position(self, i) - 1]
        if self.alphabet.mode == LETTERS:
            return pos == symbol
        return symbol in pos

    def unroll(self, n: int) -> list:
        return [self.letter_at(i) for i in range(1, n + 1)]

    def __str__(self) -> str:
        return format_word(self)


def letter_at(w: LassoWord, i: int):
    return w.letter_at(i)


def canonical_position(w: LassoWord, i: int) -> int:
    """Smallest position whose suffix equals the suffix at ``i``."""
    if i < 1:
        raise TelError(f"positions start at 1, got {i}")
    ell, p = len(w.prefix), len(w.loop)
    if i <= ell + p:
        return i
    return ell + 1 + (i - ell - 1) % p


def from_finite(trace: FiniteTrace) -> LassoWord:
    """Embed a props-mode trace as ``trace . {}^omega``."""
    if trace.alphabet.mode != PROPS:
        raise ModeMismatch("only props-mode traces have a canonical omega-completion")
    return LassoWord(trace.positions, (frozenset(),), trace.alphabet)


def lasso(prefix: Sequence, loop: Sequence, alphabet: Alphabet | Iterable[str] | None = None) -> LassoWord:
    """Convenience constructor; the alphabet defaults to the symbols used."""
    if alphabet is None or not isinstance(alphabet, Alphabet):
        positions = list(prefix) + list(loop)
        if positions and not isinstance(positions[0], str):
            used = sorted({s for pos in positions for s in pos})
            extra = list(alphabet or [])
            alphabet = Alphabet.props(dict.fromkeys(extra + used) or ["p"])
        else:
            used = list(dict.fromkeys(positions))
            extra = list(alphabet or [])
            alphabet = Alphabet.letters(dict.fromkeys(extra + used))
    return LassoWord(tuple(prefix), tuple(loop), alphabet)


# --------------------------------------------------------------------------
# word literals:  "a;a;b | c"   or   "{p,q};{} | {}"
# --------------------------------------------------------------------------


def _split_positions(text: str, offset: int) -> list[tuple[str, int]]:
    text_stripped = text.strip()
    if not text_stripped:
        return []
    out = []
    start = 0
    for piece in text.split(";"):
        lead = len(piece) - len(piece.lstrip())
        out.append((piece.strip(), offset + start + lead))
        start += len(piece) + 1
    return out


def parse_word(text: str, alphabet: Alphabet | None = None, mode: str | None = None) -> LassoWord:
    """Parse ``prefix | loop`` with ``;``-separated positions.

    Letters mode positions are identifiers; props mode positions are
    ``{p,q}`` sets. Without an alphabet one is inferred from the symbols
    used (and ``mode``, or the presence of braces).
    """
    if text.count("|") != 1:
        raise TelSyntaxError(SourceSpan(0, len(text)), "word literal needs exactly one '|'")
    bar = text.index("|")
    parts = [
        _split_positions(text[:bar], 0),
        _split_positions(text[bar + 1 :], bar + 1),
    ]
    if mode is None:
        mode = alphabet.mode if alphabet else (PROPS if "{" in text else LETTERS)
    parsed: list[list] = [[], []]
    used: list[str] = []
    for k, positions in enumerate(parts):
        for piece, at in positions:
            span = SourceSpan(at, at + len(piece))
            if mode == PROPS:
                if not (piece.startswith("{") and piece.endswith("}")):
                    raise TelSyntaxError(span, "props-mode position must be {...}")
                inner = [s.strip() for s in piece[1:-1].split(",") if s.strip()]
                for s in inner:
                    if not _IDENT.match(s):
                        raise TelSyntaxError(span, f"bad proposition {s!r}")
                used.extend(inner)
                parsed[k].append(frozenset(inner))
            else:
                if not _IDENT.match(piece):
                    raise TelSyntaxError(span, f"bad letter {piece!r}")
                used.append(piece)
                parsed[k].append(piece)
    if not parsed[1]:
        raise TelSyntaxError(SourceSpan(bar, len(text)), "loop must be non-empty")
    if alphabet is None:
        symbols = list(dict.fromkeys(used)) or ["p"]
        alphabet = Alphabet(tuple(symbols), mode)
    return LassoWord(tuple(parsed[0]), tuple(parsed[1]), alphabet)


def _format_pos(pos) -> str:
    if isinstance(pos, str):
        return pos
    return "{" + ",".join(sorted(pos)) + "}"


def format_word(w: LassoWord) -> str:
    prefix = ";".join(_format_pos(p) for p in w.prefix)
    loop = ";".join(_format_pos(p) for p in w.loop)
    return f"{prefix} | {loop}" if prefix else f"| {loop}"
