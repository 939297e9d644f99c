"""Vectorised exact evaluation of one formula over many words of one shape.

All words must share prefix length, period and alphabet mode. Every node
value is a boolean array with one entry per word, so quantifier loops and
windows are walked once for the whole batch. Only the exact lasso
semantics is supported: quantifiers inspect k up to ``l + 2p - 1``.
"""

from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

from .core import Formula
from .errors import ModeMismatch, TelError, UnboundVariable
from .evaluator import (
    _AND,
    _ATOM,
    _BOX,
    _DIAMOND,
    _EXISTS,
    _NOT,
    _OR,
    _SHIFT,
    _analysis,
)
from .words import LETTERS, LassoWord


class BatchEvaluator:
    def __init__(self, words: Sequence[LassoWord], phi: Formula):
        words = list(words)
        if not words:
            raise TelError("empty batch")
        w0 = words[0]
        self._ell, self._p = w0.prefix_len, w0.period
        self._letters = w0.mode == LETTERS
        for w in words:
            if (w.prefix_len, w.period) != (self._ell, self._p):
                raise TelError("all words in a batch need the same prefix length and period")
            if (w.mode == LETTERS) != self._letters:
                raise ModeMismatch("mixed alphabet modes in one batch")
        self.size = len(words)
        self._positions = [w.prefix + w.loop for w in words]
        if self._letters:
            codes: dict[str, int] = {}
            self._codes = np.array(
                [[codes.setdefault(c, len(codes)) for c in pos] for pos in self._positions],
                dtype=np.int32,
            )
            self._code_of = codes
        self._an = _analysis(phi)
        self._root = self._an.info(phi)
        self._kmax = self._ell + 2 * self._p - 1
        self._memo: dict = {}
        self._atoms: dict = {}
        self._zeros = np.zeros(self.size, dtype=bool)
        self._ones = np.ones(self.size, dtype=bool)

    @classmethod
    def from_codes(cls, codes: np.ndarray, symbols: Sequence[str], prefix_len: int, phi: Formula):
        """Letters-mode batch straight from an (N, l+p) array of symbol indices."""
        self = cls.__new__(cls)
        codes = np.asarray(codes, dtype=np.int32)
        self._ell = prefix_len
        self._p = codes.shape[1] - prefix_len
        if self._p < 1:
            raise TelError("the loop must be non-empty")
        self._letters = True
        self.size = codes.shape[0]
        self._codes = codes
        self._code_of = {s: n for n, s in enumerate(symbols)}
        self._an = _analysis(phi)
        self._root = self._an.info(phi)
        self._kmax = self._ell + 2 * self._p - 1
        self._memo, self._atoms = {}, {}
        self._zeros = np.zeros(self.size, dtype=bool)
        self._ones = np.ones(self.size, dtype=bool)
        return self

    def at(self, i: int = 1, env: Mapping[str, int] | None = None) -> np.ndarray:
        env = dict(env or {})
        for name in self._root.fv:
            if name not in env:
                raise UnboundVariable(name)
        return self._ev(self._root, i, env).copy()

    # ---- helpers

    def _canon(self, i: int) -> int:
        ell, p = self._ell, self._p
        if i <= ell + p:
            return i
        return ell + 1 + (i - ell - 1) % p

    def _canon_value(self, k: int) -> int:
        base = self._ell + self._p
        return k if k < base else base + (k - base) % self._p

    @staticmethod
    def _term(term, env) -> int:
        value, coefs = term
        for name, c in coefs:
            value += c * env[name]
        return value

    def _atom(self, symbol: str, i: int) -> np.ndarray:
        key = (symbol, i)
        found = self._atoms.get(key)
        if found is None:
            if self._letters:
                code = self._code_of.get(symbol)
                found = self._zeros if code is None else self._codes[:, i - 1] == code
            else:
                found = np.fromiter((symbol in pos[i - 1] for pos in self._positions), bool, self.size)
            self._atoms[key] = found
        return found

    # ---- recursion

    def _ev(self, info, i: int, env: dict) -> np.ndarray:
        i = self._canon(i)
        if info.kind == _ATOM:
            return self._atom(info.symbol, i)
        key = (id(info), i, tuple(self._canon_value(env[v]) for v in info.fv))
        found = self._memo.get(key)
        if found is None:
            found = self._compute(info, info.kind, i, env)
            self._memo[key] = found
        return found

    def _compute(self, info, kind, i, env):
        ev = self._ev
        if kind == _SHIFT:
            return ev(info.kids[0], i + self._term(info.term, env), env)
        if kind == _NOT:
            return ~ev(info.kids[0], i, env)
        if kind == _AND or kind == _OR:
            conj = kind == _AND
            out = None
            for kid in info.kids:
                r = ev(kid, i, env)
                out = r if out is None else (out & r if conj else out | r)
                if conj and not out.any():
                    return self._zeros
                if not conj and out.all():
                    return self._ones
            return out
        if kind == _BOX or kind == _DIAMOND:
            t = self._term(info.term, env)
            last = min(i + t - 1, max(i, self._ell + 1) + self._p - 1)
            box = kind == _BOX
            out = None
            for j in range(i, last + 1):
                r = ev(info.kids[0], j, env)
                out = r if out is None else (out & r if box else out | r)
                if box and not out.any():
                    return self._zeros
                if not box and out.all():
                    return self._ones
            return out
        exists = kind == _EXISTS
        pre = None
        for part in info.pre:
            r = ev(part, i, env)
            pre = r if pre is None else (pre & r if exists else pre | r)
        if pre is not None:
            if exists and not pre.any():
                return self._zeros
            if not exists and pre.all():
                return self._ones
        inner = dict(env)
        out = None
        for k in range(1, self._kmax + 1):
            inner[info.var] = k
            r = ev(info.kids[0], i, inner)
            out = r if out is None else (out | r if exists else out & r)
            if exists and out.all():
                return self._ones
            if not exists and not out.any():
                return self._zeros
        return out


def batch_eval(words: Sequence[LassoWord], phi: Formula, i: int = 1, env: Mapping[str, int] | None = None) -> np.ndarray:
    """Exact truth of ``phi`` at ``i`` on every word of the batch."""
    return BatchEvaluator(words, phi).at(i, env)
