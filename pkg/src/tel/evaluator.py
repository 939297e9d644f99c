"""Three-valued model checking of formulas on lasso words.

Quantifiers range over k = 1..B. On a lasso ``u v^omega`` with
``l = |u|`` and ``p = |v|`` the truth of ``phi[x:=k]`` is periodic in k
with period p from k = l+p on (every term mentioning x is at least k,
so windows already cover the whole loop and shifts land in the loop).
Hence checking k <= l+2p-1 decides a quantifier exactly; with
``lasso_exact`` on (the default) the evaluator exploits this.

With ``lasso_exact`` off the bounded contract applies literally: an
exhausted range is Unknown unless a monotonicity argument closes it or
``assume_complete`` is set.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass
from typing import Mapping

from . import core
from .core import And, Atom, Box, Diamond, Exists, Forall, Formula, Not, Or, Shift
from .errors import (
    ModeMismatch,
    NotQuantifierFree,
    OpenFormula,
    StepLimitExceeded,
    TelError,
    UnboundVariable,
)
from .words import LETTERS, LassoWord


class Truth3(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, value: bool | None) -> "Truth3":
        if value is None:
            return cls.UNKNOWN
        return cls.TRUE if value else cls.FALSE

    @property
    def value3(self) -> bool | None:
        return {Truth3.TRUE: True, Truth3.FALSE: False}.get(self)

    @property
    def definite(self) -> bool:
        return self is not Truth3.UNKNOWN

    def __invert__(self) -> "Truth3":
        return Truth3.of(_not3(self.value3))

    def __and__(self, other: "Truth3") -> "Truth3":
        return Truth3.of(_and3(self.value3, other.value3))

    def __or__(self, other: "Truth3") -> "Truth3":
        return Truth3.of(_or3(self.value3, other.value3))

    def __str__(self) -> str:
        return self.value


def _not3(a):
    return None if a is None else not a


def _and3(a, b):
    if a is False or b is False:
        return False
    if a is None or b is None:
        return None
    return True


def _or3(a, b):
    if a is True or b is True:
        return True
    if a is None or b is None:
        return None
    return False


@dataclass(frozen=True)
class EvalConfig:
    """Evaluation policy.

    ``quant_bound`` is B; None means ``l + 2p + 8`` for the word at hand.
    """

    quant_bound: int | None = None
    assume_complete: bool = False
    memo_enabled: bool = True
    step_limit: int = 10**7
    lasso_exact: bool = True
    monotone_closure: bool = True

    def __post_init__(self):
        if self.quant_bound is not None and self.quant_bound < 1:
            raise TelError("quantifier bound must be positive")
        if self.step_limit < 1:
            raise TelError("step limit must be positive")

    def bound_for(self, w: LassoWord) -> int:
        if self.quant_bound is not None:
            return self.quant_bound
        return default_bound(w)


def default_bound(w: LassoWord) -> int:
    return w.prefix_len + 2 * w.period + 8


def exact_threshold(w: LassoWord) -> int:
    """Largest k a quantifier needs to inspect on ``w``."""
    return w.prefix_len + 2 * w.period - 1


@dataclass
class EvalStats:
    nodes: int = 0
    atoms: int = 0
    memo_hits: int = 0


# --------------------------------------------------------------------------
# per-formula analysis
# --------------------------------------------------------------------------

_ATOM, _SHIFT, _NOT, _AND, _OR, _BOX, _DIAMOND, _EXISTS, _FORALL = range(9)
_KIND = {
    Atom: _ATOM,
    Shift: _SHIFT,
    Not: _NOT,
    And: _AND,
    Or: _OR,
    Box: _BOX,
    Diamond: _DIAMOND,
    Exists: _EXISTS,
    Forall: _FORALL,
}

_MAX_CLOSERS = 8


def _linear(t: core.TimeTerm) -> tuple[int, tuple[tuple[str, int], ...]]:
    """A term as ``c0 + sum(coef * var)``."""
    const = 0
    coefs: dict[str, int] = {}
    stack = [t]
    while stack:
        node = stack.pop()
        match node:
            case core.Const(v):
                const += v
            case core.Var(name):
                coefs[name] = coefs.get(name, 0) + 1
            case core.Sum(left, right):
                stack.extend((left, right))
    return const, tuple(sorted(coefs.items()))


class _Node:
    __slots__ = ("node", "kind", "fv", "kids", "term", "symbol", "var", "closers", "pre", "tail")

    def __init__(self, node):
        self.node = node
        self.kind = _KIND[type(node)]
        self.closers = None
        self.pre = ()
        self.tail = None


class _Analysis:
    """Node table for one formula, keyed by ``id`` (keeps nodes alive)."""

    def __init__(self, root: Formula):
        self.root = root
        self.table: dict[int, _Node] = {}
        self._lock = threading.RLock()
        self.add(root)

    def add(self, root: Formula) -> _Node:
        table = self.table
        stack = [(root, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                self._fill(table[id(node)])
                continue
            if id(node) in table:
                continue
            table[id(node)] = _Node(node)
            stack.append((node, True))
            stack.extend((c, False) for c in core.children(node))
        return table[id(root)]

    def _fill(self, info: _Node):
        node, table = info.node, self.table
        kind = info.kind
        if kind == _ATOM:
            info.symbol = node.symbol
            info.fv = ()
            info.kids = ()
            return
        if kind in (_AND, _OR):
            # flatten same-operator chains into one n-ary node
            parts = []
            stack = [node.right, node.left]
            cls = type(node)
            while stack:
                n = stack.pop()
                if type(n) is cls:
                    stack.extend((n.right, n.left))
                else:
                    parts.append(n)
            info.kids = tuple(table[id(p)] if id(p) in table else self.add(p) for p in parts)
            fv = set()
            for k in info.kids:
                fv.update(k.fv)
            info.fv = tuple(sorted(fv))
            return
        body = table[id(node.body)]
        info.kids = (body,)
        fv = set(body.fv)
        if kind in (_EXISTS, _FORALL):
            info.var = node.var
            fv.discard(node.var)
            # parts of the body that do not mention the variable decide alone
            junction = _AND if kind == _EXISTS else _OR
            if body.kind == junction:
                info.pre = tuple(k for k in body.kids if node.var not in k.fv)
            # ``Q x . f @ (x + c)`` with x not free in f asks about a whole suffix
            if body.kind == _SHIFT and node.var not in body.kids[0].fv:
                c, coefs = body.term
                if coefs == ((node.var, 1),):
                    info.tail = (body.kids[0], c)
        else:
            term = core.node_term(node)
            info.term = _linear(term)
            fv.update(name for name, _ in info.term[1])
        info.fv = tuple(sorted(fv))

    def info(self, node: Formula) -> _Node:
        with self._lock:
            found = self.table.get(id(node))
            if found is not None and found.node is node:
                return found
            return self.add(node)

    # ---- monotone closers for quantifiers

    def closers(self, q: _Node) -> tuple[_Node, ...]:
        if q.closers is None:
            with self._lock:
                x = q.var
                if q.kind == _EXISTS:
                    forms = _weakenings(q.node.body, x)
                else:
                    forms = _strengthenings(q.node.body, x)
                q.closers = tuple(self.info(f) for f in forms)
        return q.closers


def _cap(forms: list) -> list:
    seen = []
    for f in forms:
        if not any(f is g for g in seen):
            seen.append(f)
        if len(seen) >= _MAX_CLOSERS:
            break
    return seen


def _weakenings(phi: Formula, x: str) -> list[Formula]:
    """Formulas C with phi => C and C antitone in x."""
    if x not in core.free_vars(phi):
        return [phi]
    match phi:
        case And(left, right):
            return _cap(_weakenings(left, x) + _weakenings(right, x))
        case Or(left, right):
            return _cap([Or(a, b) for a in _weakenings(left, x) for b in _weakenings(right, x)])
        case Not(body):
            return [Not(d) for d in _strengthenings(body, x)]
        case Box(bound, body):
            return [Box(bound, c) for c in _weakenings(body, x)]
        case Diamond(bound, body) if x not in core.term_vars(bound):
            return [Diamond(bound, c) for c in _weakenings(body, x)]
        case Shift(body, by) if x not in core.term_vars(by):
            return [Shift(c, by) for c in _weakenings(body, x)]
        case Exists(y, body) | Forall(y, body) if y != x:
            return [type(phi)(y, c) for c in _weakenings(body, x)]
    return []


def _strengthenings(phi: Formula, x: str) -> list[Formula]:
    """Formulas D with D => phi and D isotone in x."""
    if x not in core.free_vars(phi):
        return [phi]
    match phi:
        case And(left, right):
            return _cap(
                [And(a, b) for a in _strengthenings(left, x) for b in _strengthenings(right, x)]
            )
        case Or(left, right):
            return _cap(_strengthenings(left, x) + _strengthenings(right, x))
        case Not(body):
            return [Not(c) for c in _weakenings(body, x)]
        case Box(bound, body) if x not in core.term_vars(bound):
            return [Box(bound, d) for d in _strengthenings(body, x)]
        case Diamond(bound, body):
            return [Diamond(bound, d) for d in _strengthenings(body, x)]
        case Shift(body, by) if x not in core.term_vars(by):
            return [Shift(d, by) for d in _strengthenings(body, x)]
        case Exists(y, body) | Forall(y, body) if y != x:
            return [type(phi)(y, d) for d in _strengthenings(body, x)]
    return []


_ANALYSES: dict[int, _Analysis] = {}
_ANALYSES_MAX = 64


def _analysis(phi: Formula) -> _Analysis:
    found = _ANALYSES.get(id(phi))
    if found is not None and found.root is phi:
        return found
    if len(_ANALYSES) >= _ANALYSES_MAX:
        _ANALYSES.pop(next(iter(_ANALYSES)))
    a = _Analysis(phi)
    _ANALYSES[id(phi)] = a
    return a


# --------------------------------------------------------------------------
# the evaluator
# --------------------------------------------------------------------------


class Evaluator:
    """Evaluates one formula on one word, sharing a memo across positions."""

    def __init__(self, w: LassoWord, phi: Formula, cfg: EvalConfig | None = None):
        self.word = w
        self.phi = phi
        self.cfg = cfg or EvalConfig()
        self.stats = EvalStats()
        self._an = _analysis(phi)
        self._root = self._an.info(phi)
        self._ell = w.prefix_len
        self._p = w.period
        self._letters = w.mode == LETTERS
        self._all = w.prefix + w.loop
        self._bound = self.cfg.bound_for(w)
        threshold = exact_threshold(w)
        self._exact = self.cfg.lasso_exact and self._bound >= threshold
        self._kmax = min(self._bound, threshold) if self._exact else self._bound
        self._memo: dict | None = {} if self.cfg.memo_enabled else None
        self._steps = 0

    # ---- public API

    def at(self, i: int = 1, env: Mapping[str, int] | None = None) -> Truth3:
        return Truth3.of(self._top(self._root, i, env))

    def witness(self, i: int = 1, env: Mapping[str, int] | None = None) -> tuple[Truth3, int | None]:
        """Truth at ``i`` and, for a quantifier root, the first deciding k."""
        env = self._check_env(self._root, env)
        info = self._root
        if info.kind not in (_EXISTS, _FORALL):
            return Truth3.of(self._ev(info, i, env)), None
        want = info.kind == _EXISTS
        result = self._ev(info, i, env)
        if result is want:
            body = info.kids[0]
            for k in range(1, self._kmax + 1):
                if self._ev(body, i, {**env, info.var: k}) is want:
                    return Truth3.of(result), k
        return Truth3.of(result), None

    def _top(self, info, i, env):
        env = self._check_env(info, env)
        return self._ev(info, i, env)

    def _check_env(self, info, env):
        env = dict(env or {})
        for name in info.fv:
            if name not in env:
                raise UnboundVariable(name)
        for name, value in env.items():
            if not isinstance(value, int) or value < 1:
                raise TelError(f"variable {name} must be a positive integer, got {value!r}")
        return env

    # ---- helpers

    def _canon(self, i: int) -> int:
        ell, p = self._ell, self._p
        if i <= ell + p:
            return i
        return ell + 1 + (i - ell - 1) % p

    def _canon_value(self, k: int) -> int:
        # valid by periodicity in k; only used when exactness is on
        base = self._ell + self._p
        if k < base:
            return k
        return base + (k - base) % self._p

    def _term(self, term, env) -> int:
        value, coefs = term
        for name, c in coefs:
            try:
                value += c * env[name]
            except KeyError:
                raise UnboundVariable(name) from None
        return value

    # ---- core recursion; returns True / False / None

    def _ev(self, info: _Node, i: int, env: dict):
        self._steps += 1
        if self._steps > self.cfg.step_limit:
            raise StepLimitExceeded(f"more than {self.cfg.step_limit} evaluation steps")
        self.stats.nodes += 1
        kind = info.kind
        i = self._canon(i)
        if kind == _ATOM:
            self.stats.atoms += 1
            pos = self._all[i - 1]
            return pos == info.symbol if self._letters else info.symbol in pos
        memo = self._memo
        if memo is not None:
            if self._exact:
                envkey = tuple(self._canon_value(env[v]) for v in info.fv)
            else:
                envkey = tuple(env[v] for v in info.fv)
            key = (id(info), i, envkey)
            if key in memo:
                self.stats.memo_hits += 1
                return memo[key]
        result = self._compute(info, kind, i, env)
        if memo is not None:
            memo[key] = result
        return result

    def _compute(self, info, kind, i, env):
        ev = self._ev
        if kind == _SHIFT:
            return ev(info.kids[0], i + self._term(info.term, env), env)
        if kind == _NOT:
            r = ev(info.kids[0], i, env)
            return None if r is None else not r
        if kind == _AND:
            out = True
            for kid in info.kids:
                r = ev(kid, i, env)
                if r is False:
                    return False
                if r is None:
                    out = None
            return out
        if kind == _OR:
            out = False
            for kid in info.kids:
                r = ev(kid, i, env)
                if r is True:
                    return True
                if r is None:
                    out = None
            return out
        if kind == _BOX or kind == _DIAMOND:
            t = self._term(info.term, env)
            # positions past max(i, l+1)+p-1 repeat earlier suffixes
            last = min(i + t - 1, max(i, self._ell + 1) + self._p - 1)
            stop = kind == _DIAMOND  # the value that decides the window
            out = not stop
            body = info.kids[0]
            for j in range(i, last + 1):
                r = ev(body, j, env)
                if r is stop:
                    return stop
                if r is None:
                    out = None
            return out
        return self._quantifier(info, kind, i, env)

    def _quantifier(self, info, kind, i, env):
        want = kind == _EXISTS  # value of the body that decides
        body = info.kids[0]
        x = info.var
        if self._exact and info.tail is not None:
            return self._suffix(info, i, env, want)
        if self._exact:
            for part in info.pre:
                if self._ev(part, i, env) is (not want):
                    return not want
        inner = dict(env)
        results = []
        for k in range(1, self._kmax + 1):
            inner[x] = k
            r = self._ev(body, i, inner)
            if r is want:
                return want
            results.append(r)
        if self._exact:
            return not want if None not in results else None
        if self.cfg.monotone_closure:
            closed = self._close(info, i, env, results, want)
            if closed is not None:
                return closed
        if None in results:
            return None
        return (not want) if self.cfg.assume_complete else None

    def _suffix(self, info, i, env, want):
        """Exact ``Q x . f @ (x + c)``: does f take ``want`` at some j > i + c?

        One table per environment holds, for each canonical m <= l + 1,
        whether f takes ``want`` somewhere in m..l+p; a start inside the
        loop sees the whole loop.
        """
        body, c = info.tail
        key = ("suffix", id(info), tuple(self._canon_value(env[v]) for v in body.fv))
        table = self._memo.get(key) if self._memo is not None else None
        if table is None:
            n = self._ell + self._p
            table = [None] * (n + 2)
            table[n + 1] = not want
            for j in range(n, 0, -1):
                r = self._ev(body, j, env)
                later = table[j + 1]
                table[j] = want if r is want or later is want else (None if r is None or later is None else later)
            if self._memo is not None:
                self._memo[key] = table
        m = self._canon(i + c + 1)
        return table[min(m, self._ell + 1)]

    def _close(self, info, i, env, results, want):
        """Use a monotone closer to rule out every k past some k0 <= B."""
        closers = self._an.closers(info)
        if not closers:
            return None
        x = info.var
        inner = dict(env)
        for k0 in range(1, len(results) + 1):
            inner[x] = k0
            for c in closers:
                if self._ev(c, i, inner) is (not want):
                    return not want
            if results[k0 - 1] is None:
                return None
        return None


# --------------------------------------------------------------------------
# functional API
# --------------------------------------------------------------------------


def eval(
    w: LassoWord,
    i: int,
    phi: Formula,
    env: Mapping[str, int] | None = None,
    cfg: EvalConfig | None = None,
) -> Truth3:
    """Truth of ``phi`` at position ``i`` of ``w`` under ``env``."""
    if i < 1:
        raise TelError(f"positions start at 1, got {i}")
    return Evaluator(w, phi, cfg).at(i, env)


def eval_with_witness(
    w: LassoWord,
    i: int,
    phi: Formula,
    env: Mapping[str, int] | None = None,
    cfg: EvalConfig | None = None,
) -> tuple[Truth3, int | None]:
    return Evaluator(w, phi, cfg).witness(i, env)


def eval_exact_qf(w: LassoWord, i: int, phi: Formula, env: Mapping[str, int] | None = None) -> bool:
    """Two-valued truth of a quantifier-free formula."""
    if not core.is_quantifier_free(phi):
        raise NotQuantifierFree("formula contains a quantifier")
    return Evaluator(w, phi).at(i, env) is Truth3.TRUE


def language_member(w: LassoWord, phi: Formula, cfg: EvalConfig | None = None) -> Truth3:
    """Is ``w`` in the language of the closed formula ``phi``?"""
    fv = core.free_vars(phi)
    if fv:
        raise OpenFormula(fv)
    return Evaluator(w, phi, cfg).at(1)


def holds_infinitely_often(w: LassoWord, symbols) -> bool:
    """Does some atom of ``symbols`` hold at infinitely many positions?"""
    symbols = set(symbols)
    if w.mode == LETTERS:
        return any(letter in symbols for letter in w.loop)
    if not isinstance(symbols, set):
        raise ModeMismatch("expected a set of propositions")
    return any(pos & symbols for pos in w.loop)
