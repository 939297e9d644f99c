"""Büchi automata: runs as tilings over state/letter product letters."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .. import core
from ..core import Atom, Exists, Forall, Formula, Shift, Var
from ..errors import InvalidAutomaton, TelError
from ..words import Alphabet, LassoWord
from .tiles import product, split_product


@dataclass(frozen=True)
class BuchiAutomaton:
    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    initial: str
    transitions: frozenset[tuple[str, str, str]]
    accepting: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(dict.fromkeys(self.states)))
        object.__setattr__(self, "alphabet", tuple(dict.fromkeys(self.alphabet)))
        object.__setattr__(self, "transitions", frozenset(tuple(t) for t in self.transitions))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        if not self.states or not self.alphabet:
            raise InvalidAutomaton("states and alphabet must be non-empty")
        if self.initial not in self.states:
            raise InvalidAutomaton(f"initial state {self.initial!r} is not declared")
        for p, a, q in self.transitions:
            if p not in self.states or q not in self.states or a not in self.alphabet:
                raise InvalidAutomaton(f"transition {(p, a, q)} uses undeclared names")
        if not self.accepting <= set(self.states):
            raise InvalidAutomaton("accepting states must be declared states")

    def tile(self, q: str, a: str) -> str:
        return product(q, a)

    def tiles(self) -> list[str]:
        return [product(q, a) for q in self.states for a in self.alphabet]

    def product_alphabet(self) -> Alphabet:
        return Alphabet.letters(self.tiles())

    def successors(self, p: str, a: str) -> list[str]:
        return [q for q in self.states if (p, a, q) in self.transitions]

    def is_run(self, w: LassoWord) -> bool:
        """Direct simulation: tile 1 carries q0 and every adjacent pair obeys Delta."""
        n, ell = w.canonical_positions, w.prefix_len
        tiles = [None] + [split_product(w.letter_at(j)) for j in range(1, n + 1)]
        if tiles[1][0] != self.initial:
            return False
        for j in range(1, n + 1):
            nxt = j + 1 if j < n else ell + 1
            (p, a), (q, _) = tiles[j], tiles[nxt]
            if (p, a, q) not in self.transitions:
                return False
        return True

    def accepting_tiles(self) -> list[str]:
        return [product(q, a) for q in self.states if q in self.accepting for a in self.alphabet]

    def to_json(self) -> dict:
        return {
            "states": list(self.states),
            "alphabet": list(self.alphabet),
            "initial": self.initial,
            "transitions": sorted(list(t) for t in self.transitions),
            "accepting": sorted(self.accepting),
        }

    @classmethod
    def from_json(cls, data: dict) -> "BuchiAutomaton":
        try:
            return cls(
                states=tuple(data["states"]),
                alphabet=tuple(data["alphabet"]),
                initial=data["initial"],
                transitions=frozenset(tuple(t) for t in data["transitions"]),
                accepting=frozenset(data.get("accepting", ())),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidAutomaton(f"bad automaton description: {exc}") from exc

    @classmethod
    def load(cls, path: str | Path) -> "BuchiAutomaton":
        with open(path, encoding="utf-8") as fh:
            try:
                return cls.from_json(json.load(fh))
            except json.JSONDecodeError as exc:
                raise TelError(f"{path}: {exc}") from exc


def _false(A: BuchiAutomaton) -> Formula:
    return core.bottom(A.tile(A.initial, A.alphabet[0]))


def encode_runs(A: BuchiAutomaton) -> Formula:
    """Initial-pair disjunction and the universally quantified step rule."""
    start = [
        core.And(Atom(A.tile(A.initial, a)), Shift(Atom(A.tile(p, b)), core.Const(1)))
        for (q0, a, p) in sorted(A.transitions)
        if q0 == A.initial
        for b in A.alphabet
    ]
    phi0 = core.disj(start, empty=_false(A))
    x = Var("x")
    steps = []
    for p in A.states:
        for a in A.alphabet:
            after = [Shift(Atom(A.tile(q, b)), x + 1) for q in A.successors(p, a) for b in A.alphabet]
            steps.append(Forall("x", core.implies(Shift(Atom(A.tile(p, a)), x), core.disj(after, empty=_false(A)))))
    return core.And(phi0, core.conj(steps))


def encode_acceptance(A: BuchiAutomaton) -> Formula:
    """``forall y . exists x . \\/ (p,a) @ (x + y)`` over accepting tiles."""
    at = Var("x") + Var("y")
    body = core.disj([Shift(Atom(t), at) for t in A.accepting_tiles()], empty=Shift(_false(A), at))
    return Forall("y", Exists("x", body))


def encode_buchi(A: BuchiAutomaton) -> Formula:
    """Accepting runs: run encoding and the acceptance condition together."""
    return core.And(encode_runs(A), encode_acceptance(A))
