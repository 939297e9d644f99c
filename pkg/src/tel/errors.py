"""Exception hierarchy shared by every module."""

from __future__ import annotations

from dataclasses import dataclass


class TelError(Exception):
    """Base class for all errors raised by this package."""


class UnboundVariable(TelError):
    def __init__(self, name: str):
        super().__init__(f"unbound time variable {name!r}")
        self.name = name


class OpenFormula(TelError):
    def __init__(self, names):
        names = sorted(names)
        super().__init__(f"formula has free variables: {', '.join(names)}")
        self.names = names


class ModeMismatch(TelError):
    pass


class StepLimitExceeded(TelError):
    pass


class NotQuantifierFree(TelError):
    pass


@dataclass(frozen=True)
class SourceSpan:
    begin: int
    end: int

    def __post_init__(self):
        if self.begin > self.end:
            raise ValueError("span begin after end")


class ParseError(TelError):
    """Rejected input text; ``span`` locates the offending characters."""

    def __init__(self, span: SourceSpan, message: str):
        super().__init__(f"{message} at {span.begin}:{span.end}")
        self.span = span
        self.message = message


class TelSyntaxError(ParseError):
    pass


class UnknownSymbol(ParseError):
    def __init__(self, span: SourceSpan, name: str):
        super().__init__(span, f"unknown symbol {name!r}")
        self.name = name


class ZeroConstant(ParseError):
    def __init__(self, span: SourceSpan):
        super().__init__(span, "time constant 0 is not allowed")


class NotExistsRooted(TelError):
    pass


class NotForallRooted(TelError):
    pass


class EmptyBlock(TelError):
    pass


class EmptyWord(TelError):
    pass


class EmptyWordSet(TelError):
    pass


class BadIndex(TelError):
    pass


class BudgetExceeded(TelError):
    """A generated formula grew past its node budget."""


class MalformedRow(TelError):
    def __init__(self, line: int, detail: str = ""):
        super().__init__(f"malformed row at line {line}" + (f": {detail}" if detail else ""))
        self.line = line


class NonPositiveTime(TelError):
    def __init__(self, line: int):
        super().__init__(f"time must be a positive integer at line {line}")
        self.line = line


class EmptyFile(TelError):
    pass


class InvalidAutomaton(TelError):
    pass


class InvalidInstance(TelError):
    pass
