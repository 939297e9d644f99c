"""Directed rewriting with the equational rules of the proof system.

Every operation rewrites bottom-up and can record a :class:`RewriteTrace`.
Each step names its rule group and the path (child indices from the root)
of the subformula it replaced, so replaying the steps from the input
reproduces the output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import core
from .core import (
    And,
    Atom,
    Box,
    Const,
    Diamond,
    Exists,
    Forall,
    Formula,
    FreshNames,
    Not,
    Or,
    Shift,
    Var,
)
from .errors import NotExistsRooted, NotForallRooted, TelError
from .words import LETTERS, Alphabet

RULES = (
    "Sigma",
    "Negation",
    "Future",
    "Box",
    "Diamond",
    "Mono",
    "ExistsUnfold",
    "ForallUnfold",
    "Boolean",
)

Path = tuple[int, ...]


@dataclass(frozen=True)
class RewriteStep:
    rule: str
    path: Path
    before: Formula
    after: Formula

    def __post_init__(self):
        if self.rule not in RULES:
            raise TelError(f"unknown rule group {self.rule!r}")


@dataclass
class RewriteTrace:
    steps: list[RewriteStep] = field(default_factory=list)

    def record(self, rule: str, path: Path, before: Formula, after: Formula):
        self.steps.append(RewriteStep(rule, path, before, after))

    def replay(self, phi: Formula) -> Formula:
        for step in self.steps:
            current = subformula(phi, step.path)
            if current != step.before:
                raise TelError(f"trace does not match at path {step.path}")
            phi = replace_at(phi, step.path, step.after)
        return phi

    def to_json(self) -> list[dict]:
        from .syntax import print_formula

        return [
            {
                "rule": s.rule,
                "path": list(s.path),
                "before": print_formula(s.before),
                "after": print_formula(s.after),
            }
            for s in self.steps
        ]

    def __len__(self) -> int:
        return len(self.steps)


def subformula(phi: Formula, path: Path) -> Formula:
    for idx in path:
        phi = core.children(phi)[idx]
    return phi


def replace_at(phi: Formula, path: Path, new: Formula) -> Formula:
    if not path:
        return new
    kids = list(core.children(phi))
    kids[path[0]] = replace_at(kids[path[0]], path[1:], new)
    return core.with_children(phi, tuple(kids))


# --------------------------------------------------------------------------
# engine
# --------------------------------------------------------------------------

Rule = Callable[[Formula], "tuple[str, Formula] | None"]

_STEP_CAP = 200_000


class _Engine:
    """Rewrites to a normal form, children first unless ``top_down``."""

    def __init__(self, rule: Rule, trace: RewriteTrace | None, top_down: bool = False):
        self.rule = rule
        self.trace = trace
        self.top_down = top_down
        self.steps = 0

    def run(self, phi: Formula, path: Path = ()) -> Formula:
        if self.top_down:
            return self._children(self._root(phi, path), path)
        phi = self._children(phi, path)
        while True:
            new = self._step(phi, path)
            if new is None:
                return phi
            phi = self._children(new, path)

    def _root(self, phi: Formula, path: Path) -> Formula:
        while (new := self._step(phi, path)) is not None:
            phi = new
        return phi

    def _step(self, phi: Formula, path: Path) -> Formula | None:
        hit = self.rule(phi)
        if hit is None:
            return None
        name, new = hit
        self.steps += 1
        if self.steps > _STEP_CAP:
            raise TelError("rewriting did not terminate")
        if self.trace is not None:
            self.trace.record(name, path, phi, new)
        return new

    def _children(self, phi: Formula, path: Path) -> Formula:
        kids = core.children(phi)
        new = tuple(self.run(k, path + (n,)) for n, k in enumerate(kids))
        return core.with_children(phi, new)


def _rewrite(phi: Formula, rule: Rule, trace: RewriteTrace | None, top_down: bool = False) -> Formula:
    return _Engine(rule, trace, top_down).run(phi)


# --------------------------------------------------------------------------
# negation-free form
# --------------------------------------------------------------------------


def negation_free(phi: Formula, alphabet: Alphabet, trace: RewriteTrace | None = None) -> Formula:
    """Push negations to atoms; in letters mode replace ``!a`` by the other letters.

    A one-letter alphabet has no other letters, so ``!a`` stays there.
    """
    letters = alphabet.mode == LETTERS

    def rule(node):
        if not isinstance(node, Not):
            return None
        match node.body:
            case Not(inner):
                return "Boolean", inner
            case Shift(body, by):
                return "Negation", Shift(Not(body), by)
            case Box(bound, body):
                return "Negation", Diamond(bound, Not(body))
            case Diamond(bound, body):
                return "Negation", Box(bound, Not(body))
            case Forall(x, body):
                return "Negation", Exists(x, Not(body))
            case Exists(x, body):
                return "Negation", Forall(x, Not(body))
            case And(left, right):
                return "Negation", Or(Not(left), Not(right))
            case Or(left, right):
                return "Negation", And(Not(left), Not(right))
            case Atom(symbol) if letters:
                others = [Atom(s) for s in alphabet.symbols if s != symbol]
                if others:
                    return "Sigma", core.disj(others)
        return None

    # outermost first, so a double negation cancels before its body is touched
    return _rewrite(phi, rule, trace, top_down=True)


# --------------------------------------------------------------------------
# shift normalisation
# --------------------------------------------------------------------------


def _fold_rule(node):
    """Fold the term carried by a shift or modality."""
    t = core.node_term(node)
    if t is None:
        return None
    folded = core.fold_term(t)
    if folded == t:
        return None
    match node:
        case Shift(body, _):
            return "Future", Shift(body, folded)
        case Box(_, body):
            return "Box", Box(folded, body)
        case Diamond(_, body):
            return "Diamond", Diamond(folded, body)


def _shift_rule(fresh: FreshNames):
    def rule(node):
        if isinstance(node, Shift):
            by = node.by
            match node.body:
                case Shift(inner, s):
                    return "Future", Shift(inner, core.fold_term(s + by))
                case Not(inner):
                    return "Negation", Not(Shift(inner, by))
                case And(left, right):
                    return "Future", And(Shift(left, by), Shift(right, by))
                case Or(left, right):
                    return "Future", Or(Shift(left, by), Shift(right, by))
                case Box(bound, inner):
                    return "Box", Box(bound, Shift(inner, by))
                case Diamond(bound, inner):
                    return "Diamond", Diamond(bound, Shift(inner, by))
                case Exists(x, inner) | Forall(x, inner):
                    group = "ExistsUnfold" if isinstance(node.body, Exists) else "ForallUnfold"
                    q = node.body
                    if x in core.term_vars(by):
                        fresh.avoid(core.all_vars(node))
                        q = core.rename_bound(q, fresh)
                    return group, type(q)(q.var, Shift(q.body, by))
        return _fold_rule(node)

    return rule


def normalize_shifts(phi: Formula, trace: RewriteTrace | None = None) -> Formula:
    """Push every shift down to the atoms and fold all terms."""
    fresh = FreshNames(core.all_vars(phi))
    return _rewrite(phi, _shift_rule(fresh), trace)


# --------------------------------------------------------------------------
# constant modalities
# --------------------------------------------------------------------------


def _literals(phi: Formula) -> int:
    n = 0
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            n += 1
        stack.extend(core.children(node))
    return n


def expand_constant_modalities(
    phi: Formula, size_guard: int = 256, trace: RewriteTrace | None = None
) -> Formula:
    """Replace ``[k] f`` / ``<k> f`` by k shifted copies joined by & / |."""

    def rule(node):
        if not isinstance(node, (Box, Diamond)):
            return None
        k = core.const_value(node.bound)
        if k is None or k * _literals(node.body) > size_guard:
            return None
        copies = [core.shift(node.body, j) for j in range(k)]
        if isinstance(node, Box):
            return "Box", core.conj(copies)
        return "Diamond", core.disj(copies)

    return _rewrite(phi, rule, trace)


# --------------------------------------------------------------------------
# quantifier unfolding
# --------------------------------------------------------------------------


def _unfold(phi, trace, group, join):
    fresh = FreshNames(core.all_vars(phi))
    y = fresh()
    x, body = phi.var, phi.body
    first = core.subst(body, x, Const(1), fresh)
    rest = type(phi)(y, core.subst(body, x, Var(y) + 1, fresh))
    out = join(first, rest)
    if trace is not None:
        trace.record(group, (), phi, out)
    return out


def unfold_exists(phi: Formula, trace: RewriteTrace | None = None) -> Formula:
    """``exists x . f`` to ``f[x:=1] | exists y . f[x:=y+1]``."""
    if not isinstance(phi, Exists):
        raise NotExistsRooted("unfold_exists needs an exists-rooted formula")
    return _unfold(phi, trace, "ExistsUnfold", Or)


def unfold_forall(phi: Formula, trace: RewriteTrace | None = None) -> Formula:
    """``forall x . f`` to ``f[x:=1] & forall y . f[x:=y+1]``."""
    if not isinstance(phi, Forall):
        raise NotForallRooted("unfold_forall needs a forall-rooted formula")
    return _unfold(phi, trace, "ForallUnfold", And)


# --------------------------------------------------------------------------
# simplification
# --------------------------------------------------------------------------


def _simplify_rule(node):
    match node:
        case Box(bound, body) | Diamond(bound, body) if core.const_value(bound) == 1:
            return ("Box" if isinstance(node, Box) else "Diamond"), body
        case Box(s, Box(t, body)) | Diamond(s, Diamond(t, body)):
            a, b = core.const_value(s), core.const_value(t)
            if a is not None and b is not None:
                group = "Box" if isinstance(node, Box) else "Diamond"
                return group, type(node)(Const(a + b - 1), body)
        case Not(Not(body)):
            return "Boolean", body
        case And(left, right):
            if left == right:
                return "Boolean", left
            if core.is_top(right) or core.is_bottom(left):
                return "Boolean", left
            if core.is_top(left) or core.is_bottom(right):
                return "Boolean", right
        case Or(left, right):
            if left == right:
                return "Boolean", left
            if core.is_bottom(right) or core.is_top(left):
                return "Boolean", left
            if core.is_bottom(left) or core.is_top(right):
                return "Boolean", right
    return None


def simplify(phi: Formula, trace: RewriteTrace | None = None, sweeps: int = 8) -> Formula:
    """Bounded fixpoint of shift normalisation and the simplification rules."""
    fresh = FreshNames(core.all_vars(phi))
    shift_rule = _shift_rule(fresh)

    def rule(node):
        return _simplify_rule(node) or shift_rule(node)

    for _ in range(sweeps):
        new = _rewrite(phi, rule, trace)
        if new == phi:
            break
        phi = new
    return phi


OPERATIONS: dict[str, Callable] = {
    "negation_free": negation_free,
    "normalize_shifts": normalize_shifts,
    "expand_constant_modalities": expand_constant_modalities,
    "simplify": simplify,
}


def apply_all(phi: Formula, ops: Iterable[str], alphabet: Alphabet | None = None) -> Formula:
    for name in ops:
        if name == "negation_free":
            phi = negation_free(phi, alphabet)
        else:
            phi = OPERATIONS[name](phi)
    return phi
