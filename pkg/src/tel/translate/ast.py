"""Abstract syntax for the LTL and TCL front-ends."""

from __future__ import annotations

from dataclasses import dataclass

# ---- LTL -----------------------------------------------------------------


class LTL:
    __slots__ = ()

    def __str__(self) -> str:
        from ..syntax import print_ltl

        return print_ltl(self)


@dataclass(frozen=True)
class LAtom(LTL):
    symbol: str


@dataclass(frozen=True)
class LNot(LTL):
    body: LTL


@dataclass(frozen=True)
class LAnd(LTL):
    left: LTL
    right: LTL


@dataclass(frozen=True)
class LOr(LTL):
    left: LTL
    right: LTL


@dataclass(frozen=True)
class Next(LTL):
    body: LTL


@dataclass(frozen=True)
class Finally(LTL):
    body: LTL


@dataclass(frozen=True)
class Globally(LTL):
    body: LTL


@dataclass(frozen=True)
class Until(LTL):
    left: LTL
    right: LTL


@dataclass(frozen=True)
class WeakUntil(LTL):
    left: LTL
    right: LTL


@dataclass(frozen=True)
class StrongRelease(LTL):
    left: LTL
    right: LTL


@dataclass(frozen=True)
class Release(LTL):
    left: LTL
    right: LTL


LTL_UNARY = {"X": Next, "F": Finally, "G": Globally}
LTL_BINARY = {"U": Until, "W": WeakUntil, "M": StrongRelease, "R": Release}

# ---- TCL -----------------------------------------------------------------

ALLEN_KINDS = {
    "A": "meets",
    "L": "before",
    "B": "started-by",
    "E": "finished-by",
    "D": "contains",
    "O": "overlaps",
}


class TCL:
    __slots__ = ()

    def __str__(self) -> str:
        from ..syntax import print_tcl

        return print_tcl(self)


@dataclass(frozen=True)
class TAtom(TCL):
    symbol: str


@dataclass(frozen=True)
class TNot(TCL):
    body: TCL


@dataclass(frozen=True)
class TAnd(TCL):
    left: TCL
    right: TCL


@dataclass(frozen=True)
class TOr(TCL):
    left: TCL
    right: TCL


@dataclass(frozen=True)
class Allen(TCL):
    kind: str
    left: TCL
    right: TCL

    def __post_init__(self):
        if self.kind not in ALLEN_KINDS:
            raise ValueError(f"unknown Allen operator {self.kind!r}")
