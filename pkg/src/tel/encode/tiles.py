"""Letter naming for product alphabets and the word-block formula."""

from __future__ import annotations

from typing import Iterable, Sequence

from .. import core
from ..core import Atom, Formula
from ..errors import EmptyWord, TelError
from ..words import Alphabet

SEP = "__"
FILLER = "f"
CENT = "cent"
HASH = "hash"

PLAIN, DOTTED, DOUBLE = 0, 1, 2


def product(top: str, bottom: str) -> str:
    """Flatten a two-row tile into one identifier ``top__bottom``."""
    return f"{top}{SEP}{bottom}"


def split_product(symbol: str) -> tuple[str, str]:
    top, sep, bottom = symbol.partition(SEP)
    if not sep:
        raise TelError(f"{symbol!r} is not a product letter")
    return top, bottom


def mirror(symbol: str, level: int = PLAIN) -> str:
    """Name of ``symbol`` with 0, 1 or 2 dots.

    Digits get an ``s`` prefix when plain so every name is an identifier:
    ``0`` -> ``s0``, ``d0``, ``dd0``; ``a`` -> ``a``, ``da``, ``dda``.
    """
    match level:
        case 0:
            return f"s{symbol}" if symbol[:1].isdigit() else symbol
        case 1:
            return f"d{symbol}"
        case 2:
            return f"dd{symbol}"
    raise TelError(f"mirror level must be 0, 1 or 2, got {level}")


def dotted_word(word: Sequence[str], level: int) -> list[str]:
    """Letters of ``word`` with only the leading one decorated."""
    return [mirror(word[0], level)] + [mirror(c) for c in word[1:]]


def any_of(symbols: Iterable[str]) -> Formula:
    """Disjunction of letter atoms (the set-as-formula convention)."""
    return core.disj([Atom(s) for s in symbols])


def word_block(w: Sequence[str], s: int = 0, alphabet: Alphabet | None = None) -> Formula:
    """``(w[1] & w[2] @ 1 & ... & w[k] @ (k-1)) @ s``.

    Holds at position 1 exactly on the words that spell ``w`` from
    position ``s + 1`` on.
    """
    w = list(w)
    if not w:
        raise EmptyWord("word_block needs a non-empty word")
    if s < 0:
        raise TelError(f"shift must be non-negative, got {s}")
    if alphabet is not None:
        missing = [c for c in w if c not in alphabet]
        if missing:
            raise TelError(f"letters not in alphabet: {missing}")
    body = core.conj([core.shift(Atom(c), j) for j, c in enumerate(w)])
    return core.shift(body, s)


def tree_size(phi: Formula, budget: int | None = None) -> int:
    """Node count of the formula tree, counting shared subtrees every time.

    Shared subterms are measured once, so this stays cheap for the large
    formulas the encoders build by reusing pieces.
    """
    memo: dict[int, int] = {}
    stack = [(phi, False)]
    while stack:
        node, done = stack.pop()
        key = id(node)
        if key in memo:
            continue
        kids = core.children(node)
        if done:
            memo[key] = 1 + sum(memo[id(k)] for k in kids)
            if budget is not None and memo[key] > budget:
                return memo[key]
            continue
        stack.append((node, True))
        stack.extend((k, False) for k in kids if id(k) not in memo)
    return memo[id(phi)]
