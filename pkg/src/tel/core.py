"""Abstract syntax for time terms and TEL formulas.

Time terms are positive integers, variables and sums. Formulas are the
nine node kinds of the logic; the unbounded modalities, implication and
the Boolean constants are derived forms built from them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .errors import TelError, UnboundVariable


# --------------------------------------------------------------------------
# time terms
# --------------------------------------------------------------------------


class TimeTerm:
    __slots__ = ()

    def __add__(self, other: "TermLike") -> "TimeTerm":
        return Sum(self, as_term(other))

    def __radd__(self, other: "TermLike") -> "TimeTerm":
        return Sum(as_term(other), self)


@dataclass(frozen=True, slots=True)
class Const(TimeTerm):
    value: int

    def __post_init__(self):
        if isinstance(self.value, bool) or not isinstance(self.value, int):
            raise TypeError(f"time constant must be an int, got {self.value!r}")
        if self.value < 1:
            raise TelError(f"time constants are positive, got {self.value}")


@dataclass(frozen=True, slots=True)
class Var(TimeTerm):
    name: str


@dataclass(frozen=True, slots=True)
class Sum(TimeTerm):
    left: TimeTerm
    right: TimeTerm


TermLike = Union[TimeTerm, int, str]


def as_term(t: TermLike) -> TimeTerm:
    """Coerce ints to constants and strings to variables."""
    if isinstance(t, TimeTerm):
        return t
    if isinstance(t, bool):
        raise TypeError("bool is not a time term")
    if isinstance(t, int):
        return Const(t)
    if isinstance(t, str):
        return Var(t)
    raise TypeError(f"not a time term: {t!r}")


def term_eval(t: TimeTerm, env: Mapping[str, int]) -> int:
    match t:
        case Const(v):
            return v
        case Var(name):
            try:
                return env[name]
            except KeyError:
                raise UnboundVariable(name) from None
        case Sum(left, right):
            return term_eval(left, env) + term_eval(right, env)
    raise TypeError(f"not a time term: {t!r}")


def term_vars(t: TimeTerm) -> frozenset[str]:
    match t:
        case Const():
            return frozenset()
        case Var(name):
            return frozenset((name,))
        case Sum(left, right):
            return term_vars(left) | term_vars(right)
    raise TypeError(f"not a time term: {t!r}")


def term_subst(t: TimeTerm, x: str, by: TimeTerm) -> TimeTerm:
    match t:
        case Var(name) if name == x:
            return by
        case Sum(left, right):
            new_left, new_right = term_subst(left, x, by), term_subst(right, x, by)
            if new_left is left and new_right is right:
                return t
            return Sum(new_left, new_right)
    return t


def term_coefficient(t: TimeTerm, x: str) -> int:
    """Number of occurrences of ``x`` in the sum ``t``."""
    match t:
        case Var(name):
            return int(name == x)
        case Sum(left, right):
            return term_coefficient(left, x) + term_coefficient(right, x)
    return 0


def fold_term(t: TimeTerm) -> TimeTerm:
    """Canonical sum: variables sorted by name, then one folded constant.

    ``2 + x + 3 + x`` becomes ``x + x + 5``.
    """
    names: list[str] = []
    total = 0
    stack = [t]
    while stack:
        node = stack.pop()
        match node:
            case Const(v):
                total += v
            case Var(name):
                names.append(name)
            case Sum(left, right):
                stack.append(right)
                stack.append(left)
    parts: list[TimeTerm] = [Var(n) for n in sorted(names)]
    if total:
        parts.append(Const(total))
    out = parts[0]
    for p in parts[1:]:
        out = Sum(out, p)
    return out


def const_value(t: TimeTerm) -> int | None:
    """Value of a variable-free term, else None."""
    if term_vars(t):
        return None
    return term_eval(t, {})


def times(n: int, t: TermLike) -> TimeTerm:
    """The ``n t`` shorthand: ``t + t + ... + t`` (n copies)."""
    if n < 1:
        raise TelError(f"multiplier must be positive, got {n}")
    t = as_term(t)
    out = t
    for _ in range(n - 1):
        out = Sum(out, t)
    return out


# --------------------------------------------------------------------------
# formulas
# --------------------------------------------------------------------------


class Formula:
    __slots__ = ()

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)

    def __str__(self) -> str:
        from .syntax import print_formula

        return print_formula(self)


@dataclass(frozen=True, eq=True)
class Atom(Formula):
    symbol: str


@dataclass(frozen=True, eq=True)
class Shift(Formula):
    body: Formula
    by: TimeTerm


@dataclass(frozen=True, eq=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True, eq=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=True)
class Box(Formula):
    bound: TimeTerm
    body: Formula


@dataclass(frozen=True, eq=True)
class Diamond(Formula):
    bound: TimeTerm
    body: Formula


@dataclass(frozen=True, eq=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True, eq=True)
class Forall(Formula):
    var: str
    body: Formula


QUANTIFIERS = (Exists, Forall)
MODALITIES = (Box, Diamond)


def children(phi: Formula) -> tuple[Formula, ...]:
    match phi:
        case Atom():
            return ()
        case Shift(body, _) | Not(body) | Box(_, body) | Diamond(_, body):
            return (body,)
        case Exists(_, body) | Forall(_, body):
            return (body,)
        case And(left, right) | Or(left, right):
            return (left, right)
    raise TypeError(f"not a formula: {phi!r}")


def with_children(phi: Formula, kids: tuple[Formula, ...]) -> Formula:
    """Rebuild ``phi`` with new children, reusing it when nothing changed."""
    if all(a is b for a, b in zip(kids, children(phi))):
        return phi
    match phi:
        case Shift(_, by):
            return Shift(kids[0], by)
        case Not():
            return Not(kids[0])
        case Box(bound, _):
            return Box(bound, kids[0])
        case Diamond(bound, _):
            return Diamond(bound, kids[0])
        case Exists(var, _):
            return Exists(var, kids[0])
        case Forall(var, _):
            return Forall(var, kids[0])
        case And():
            return And(kids[0], kids[1])
        case Or():
            return Or(kids[0], kids[1])
    raise TypeError(f"cannot rebuild {phi!r}")


def node_term(phi: Formula) -> TimeTerm | None:
    match phi:
        case Shift(_, by):
            return by
        case Box(bound, _) | Diamond(bound, _):
            return bound
    return None


def atoms(phi: Formula) -> frozenset[str]:
    out = set()
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            out.add(node.symbol)
        else:
            stack.extend(children(node))
    return frozenset(out)


def free_vars(phi: Formula) -> frozenset[str]:
    match phi:
        case Atom():
            return frozenset()
        case Shift(body, t) | Box(t, body) | Diamond(t, body):
            return free_vars(body) | term_vars(t)
        case Not(body):
            return free_vars(body)
        case And(left, right) | Or(left, right):
            return free_vars(left) | free_vars(right)
        case Exists(x, body) | Forall(x, body):
            return free_vars(body) - {x}
    raise TypeError(f"not a formula: {phi!r}")


def all_vars(phi: Formula) -> frozenset[str]:
    """Every variable name occurring anywhere, bound or free."""
    out = set()
    stack = [phi]
    while stack:
        node = stack.pop()
        t = node_term(node)
        if t is not None:
            out |= term_vars(t)
        if isinstance(node, QUANTIFIERS):
            out.add(node.var)
        stack.extend(children(node))
    return frozenset(out)


def size(phi: Formula) -> int:
    n = 0
    stack = [phi]
    while stack:
        node = stack.pop()
        n += 1
        stack.extend(children(node))
    return n


def is_quantifier_free(phi: Formula) -> bool:
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, QUANTIFIERS):
            return False
        stack.extend(children(node))
    return True


FRESH_PREFIX = "_v"


class FreshNames:
    """Generates ``_v1, _v2, ...`` skipping names already in use."""

    def __init__(self, avoid: Iterable[str] = (), prefix: str = FRESH_PREFIX):
        self.used = set(avoid)
        self.prefix = prefix
        self.counter = 0

    def avoid(self, names: Iterable[str]) -> None:
        self.used.update(names)

    def __call__(self) -> str:
        while True:
            self.counter += 1
            name = f"{self.prefix}{self.counter}"
            if name not in self.used:
                self.used.add(name)
                return name


def subst(phi: Formula, x: str, t: TermLike, fresh: FreshNames | None = None) -> Formula:
    """Capture-avoiding substitution ``phi[x := t]``."""
    t = as_term(t)
    tv = term_vars(t)
    if fresh is None:
        fresh = FreshNames(all_vars(phi) | tv | {x})
    return _subst(phi, x, t, tv, fresh)


def _subst(phi, x, t, tv, fresh):
    if x not in free_vars(phi):
        return phi
    match phi:
        case Shift(body, by):
            return Shift(_subst(body, x, t, tv, fresh), term_subst(by, x, t))
        case Box(bound, body):
            return Box(term_subst(bound, x, t), _subst(body, x, t, tv, fresh))
        case Diamond(bound, body):
            return Diamond(term_subst(bound, x, t), _subst(body, x, t, tv, fresh))
        case Not(body):
            return Not(_subst(body, x, t, tv, fresh))
        case And(left, right):
            return And(_subst(left, x, t, tv, fresh), _subst(right, x, t, tv, fresh))
        case Or(left, right):
            return Or(_subst(left, x, t, tv, fresh), _subst(right, x, t, tv, fresh))
        case Exists(y, body) | Forall(y, body):
            if y in tv:
                renamed = fresh()
                body = _subst(body, y, Var(renamed), frozenset((renamed,)), fresh)
                y = renamed
            return type(phi)(y, _subst(body, x, t, tv, fresh))
    raise TypeError(f"not a formula: {phi!r}")


def rename_bound(phi: Formula, fresh: FreshNames) -> Formula:
    """Rename a quantifier's own variable to a fresh name."""
    if not isinstance(phi, QUANTIFIERS):
        raise TypeError("rename_bound needs a quantifier node")
    y = fresh()
    return type(phi)(y, subst(phi.body, phi.var, Var(y), fresh))


def alpha_equal(a: Formula, b: Formula) -> bool:
    """Structural equality up to renaming of bound variables."""
    return _alpha(a, b, {}, {})


def _alpha_term(s, t, ma, mb):
    match s, t:
        case Const(u), Const(v):
            return u == v
        case Var(u), Var(v):
            return ma.get(u, ("free", u)) == mb.get(v, ("free", v))
        case Sum(l1, r1), Sum(l2, r2):
            return _alpha_term(l1, l2, ma, mb) and _alpha_term(r1, r2, ma, mb)
    return False


def _alpha(a, b, ma, mb):
    if type(a) is not type(b):
        return False
    match a:
        case Atom(s):
            return s == b.symbol
        case Exists(x, body) | Forall(x, body):
            marker = ("bound", len(ma), id(a))
            return _alpha(body, b.body, {**ma, x: marker}, {**mb, b.var: marker})
    ta, tb = node_term(a), node_term(b)
    if ta is not None and not _alpha_term(ta, tb, ma, mb):
        return False
    return all(_alpha(c, d, ma, mb) for c, d in zip(children(a), children(b)))


# --------------------------------------------------------------------------
# derived forms
# --------------------------------------------------------------------------


def shift(phi: Formula, t: TermLike) -> Formula:
    """``phi`` shifted ``t`` into the future; a shift by 0 is ``phi`` itself."""
    if isinstance(t, int) and not isinstance(t, bool) and t == 0:
        return phi
    return Shift(phi, as_term(t))


def implies(a: Formula, b: Formula) -> Formula:
    return Or(Not(a), b)


def box_inf(phi: Formula, fresh: FreshNames | None = None) -> Formula:
    """Unbounded box: ``phi & forall x . phi @ x`` with x fresh for phi."""
    fresh = fresh or FreshNames(all_vars(phi))
    fresh.avoid(all_vars(phi))
    x = fresh()
    return And(phi, Forall(x, Shift(phi, Var(x))))


def diamond_inf(phi: Formula, fresh: FreshNames | None = None) -> Formula:
    """Unbounded diamond: ``phi | exists x . phi @ x`` with x fresh for phi."""
    fresh = fresh or FreshNames(all_vars(phi))
    fresh.avoid(all_vars(phi))
    x = fresh()
    return Or(phi, Exists(x, Shift(phi, Var(x))))


def top(atom: str) -> Formula:
    return Or(Atom(atom), Not(Atom(atom)))


def bottom(atom: str) -> Formula:
    return And(Atom(atom), Not(Atom(atom)))


def conj(parts: Iterable[Formula], empty: Formula | None = None) -> Formula:
    """Left-nested conjunction; ``empty`` is returned for no parts."""
    parts = list(parts)
    if not parts:
        if empty is None:
            raise TelError("empty conjunction needs an explicit unit")
        return empty
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(parts: Iterable[Formula], empty: Formula | None = None) -> Formula:
    """Left-nested disjunction; ``empty`` is returned for no parts."""
    parts = list(parts)
    if not parts:
        if empty is None:
            raise TelError("empty disjunction needs an explicit unit")
        return empty
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def is_top(phi: Formula) -> bool:
    """Recognises the ``a | !a`` encoding of truth (either order)."""
    match phi:
        case Or(Not(a), b) | Or(b, Not(a)):
            return a == b
    return False


def is_bottom(phi: Formula) -> bool:
    match phi:
        case And(Not(a), b) | And(b, Not(a)):
            return a == b
    return False
