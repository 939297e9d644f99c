"""Text syntax for formulas: tokenizer, recursive-descent parsers, printers.

Formula grammar, loosest first::

    formula  := disj ('->' formula)?
    disj     := conj ('|' conj)*
    conj     := prefix ('&' prefix)*
    prefix   := '!' prefix | '[' term ']' prefix | '<' term '>' prefix
              | '[' ']' prefix | '<' '>' prefix
              | ('exists' | 'forall') IDENT '.' formula
              | postfix
    postfix  := primary ('@' product)*
    primary  := IDENT | '(' formula ')'
    term     := product ('+' product)*
    product  := INT '*' tatom | tatom
    tatom    := INT | IDENT | '(' term ')'

Quantifier bodies extend as far right as possible. The LTL and TCL
mini-languages share the tokenizer and have their own entry points.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from . import core
from .core import (
    And,
    Atom,
    Box,
    Const,
    Diamond,
    Exists,
    Forall,
    FreshNames,
    Formula,
    Not,
    Or,
    Shift,
    Sum,
    TimeTerm,
    Var,
)
from .errors import SourceSpan, TelSyntaxError, UnknownSymbol, ZeroConstant
from .translate import ast as T
from .words import Alphabet

KEYWORDS = frozenset({"exists", "forall"})

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>->|[@!\[\]<>&|().+*])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "op", "eof"
    text: str
    begin: int
    end: int

    @property
    def span(self) -> SourceSpan:
        return SourceSpan(self.begin, self.end)


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise TelSyntaxError(SourceSpan(pos, pos + 1), f"unexpected character {text[pos]!r}")
        if m.lastgroup != "ws":
            out.append(Token(m.lastgroup, m.group(), m.start(), m.end()))
        pos = m.end()
    out.append(Token("eof", "", len(text), len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}")
        return self.advance()

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise TelSyntaxError(tok.span, f"{message}, found {found}")

    def finish(self):
        if self.tok.kind != "eof":
            self.fail("unexpected trailing input")


class FormulaParser(_Parser):
    def __init__(self, text: str, alphabet: Alphabet | None, free_vars: Iterable[str]):
        super().__init__(text)
        self.alphabet = alphabet
        self.scope: list[str] = list(free_vars)
        self.fresh = FreshNames()

    # ---- terms

    def term(self) -> TimeTerm:
        t = self.product()
        while self.at("+"):
            self.advance()
            t = Sum(t, self.product())
        return t

    def product(self) -> TimeTerm:
        if self.tok.kind == "int" and self.peek().kind == "op" and self.peek().text == "*":
            n = self.integer()
            self.advance()
            return core.times(n, self.tatom())
        return self.tatom()

    def integer(self) -> int:
        tok = self.advance()
        value = int(tok.text)
        if value == 0:
            raise ZeroConstant(tok.span)
        return value

    def tatom(self) -> TimeTerm:
        tok = self.tok
        if tok.kind == "int":
            return Const(self.integer())
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            self.advance()
            if tok.text not in self.scope:
                raise UnknownSymbol(tok.span, tok.text)
            return Var(tok.text)
        if self.at("("):
            self.advance()
            t = self.term()
            self.expect(")")
            return t
        self.fail("expected a time term")

    # ---- formulas

    def formula(self) -> Formula:
        left = self.disj()
        if self.at("->"):
            self.advance()
            return core.implies(left, self.formula())
        return left

    def disj(self) -> Formula:
        phi = self.conj()
        while self.at("|"):
            self.advance()
            phi = Or(phi, self.conj())
        return phi

    def conj(self) -> Formula:
        phi = self.prefix()
        while self.at("&"):
            self.advance()
            phi = And(phi, self.prefix())
        return phi

    def prefix(self) -> Formula:
        tok = self.tok
        if self.at("!"):
            self.advance()
            return Not(self.prefix())
        if self.at("["):
            self.advance()
            if self.at("]"):
                self.advance()
                return self._unbounded(core.box_inf, self.prefix())
            bound = self.term()
            self.expect("]")
            return Box(bound, self.prefix())
        if self.at("<"):
            self.advance()
            if self.at(">"):
                self.advance()
                return self._unbounded(core.diamond_inf, self.prefix())
            bound = self.term()
            self.expect(">")
            return Diamond(bound, self.prefix())
        if tok.kind == "ident" and tok.text in KEYWORDS:
            self.advance()
            var = self.advance()
            if var.kind != "ident" or var.text in KEYWORDS:
                self.fail("expected a variable name", var)
            self.expect(".")
            self.scope.append(var.text)
            try:
                body = self.formula()
            finally:
                self.scope.pop()
            return (Exists if tok.text == "exists" else Forall)(var.text, body)
        return self.postfix()

    def _unbounded(self, build, body: Formula) -> Formula:
        self.fresh.avoid(core.all_vars(body) | set(self.scope))
        return build(body, self.fresh)

    def postfix(self) -> Formula:
        phi = self.primary()
        while self.at("@"):
            self.advance()
            phi = Shift(phi, self.product())
        return phi

    def primary(self) -> Formula:
        tok = self.tok
        if self.at("("):
            self.advance()
            phi = self.formula()
            self.expect(")")
            return phi
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            self.advance()
            if self.alphabet is not None and tok.text not in self.alphabet:
                raise UnknownSymbol(tok.span, tok.text)
            return Atom(tok.text)
        self.fail("expected a formula")


def parse_formula(
    text: str, alphabet: Alphabet | Iterable[str] | None = None, free_vars: Iterable[str] = ()
) -> Formula:
    """Parse ``text``; atoms must belong to ``alphabet`` when one is given."""
    if alphabet is not None and not isinstance(alphabet, Alphabet):
        alphabet = Alphabet.props(alphabet)
    p = FormulaParser(text, alphabet, free_vars)
    phi = p.formula()
    p.finish()
    return phi


def parse_term(text: str, free_vars: Iterable[str] = ()) -> TimeTerm:
    p = FormulaParser(text, None, free_vars)
    t = p.term()
    p.finish()
    return t


# --------------------------------------------------------------------------
# printing
# --------------------------------------------------------------------------

_OR, _AND, _PREFIX, _POSTFIX, _ATOM = 1, 2, 3, 4, 5


def print_term(t: TimeTerm, tight: bool = False) -> str:
    """Render a term; ``tight`` adds parentheses where a product is expected."""
    match t:
        case Const(v):
            return str(v)
        case Var(name):
            return name
        case Sum(left, right):
            right_s = print_term(right)
            if isinstance(right, Sum):
                right_s = f"({right_s})"
            s = f"{print_term(left)} + {right_s}"
            return f"({s})" if tight else s
    raise TypeError(f"not a time term: {t!r}")


def _level(phi: Formula) -> int:
    match phi:
        case Or():
            return _OR
        case And():
            return _AND
        case Not() | Box() | Diamond() | Exists() | Forall():
            return _PREFIX
        case Shift():
            return _POSTFIX
    return _ATOM


def _print(phi: Formula, need: int, rightmost: bool) -> str:
    quant = isinstance(phi, core.QUANTIFIERS)
    if _level(phi) < need or (quant and (not rightmost or need > _PREFIX)):
        return f"({_print(phi, _OR, True)})"
    match phi:
        case Atom(symbol):
            return symbol
        case Shift(body, by):
            return f"{_print(body, _POSTFIX, False)} @ {print_term(by, tight=True)}"
        case Not(body):
            return "!" + _print(body, _PREFIX, rightmost)
        case Box(bound, body):
            return f"[{print_term(bound)}] {_print(body, _PREFIX, rightmost)}"
        case Diamond(bound, body):
            return f"<{print_term(bound)}> {_print(body, _PREFIX, rightmost)}"
        case And(left, right):
            return f"{_print(left, _AND, False)} & {_print(right, _PREFIX, rightmost)}"
        case Or(left, right):
            return f"{_print(left, _OR, False)} | {_print(right, _AND, rightmost)}"
        case Exists(var, body):
            return f"exists {var} . {_print(body, _OR, rightmost)}"
        case Forall(var, body):
            return f"forall {var} . {_print(body, _OR, rightmost)}"
    raise TypeError(f"not a formula: {phi!r}")


def print_formula(phi: Formula) -> str:
    """Canonical text with the fewest parentheses that reparse to ``phi``."""
    return _print(phi, _OR, True)


# --------------------------------------------------------------------------
# JSON AST
# --------------------------------------------------------------------------


def term_to_json(t: TimeTerm) -> dict:
    match t:
        case Const(v):
            return {"kind": "const", "value": v}
        case Var(name):
            return {"kind": "var", "name": name}
        case Sum(left, right):
            return {"kind": "sum", "children": [term_to_json(left), term_to_json(right)]}
    raise TypeError(f"not a time term: {t!r}")


def term_from_json(obj: dict) -> TimeTerm:
    match obj:
        case {"kind": "const", "value": v}:
            return Const(v)
        case {"kind": "var", "name": name}:
            return Var(name)
        case {"kind": "sum", "children": [left, right]}:
            return Sum(term_from_json(left), term_from_json(right))
    raise ValueError(f"malformed term object: {obj!r}")


_KINDS = {
    "atom": Atom,
    "shift": Shift,
    "not": Not,
    "and": And,
    "or": Or,
    "box": Box,
    "diamond": Diamond,
    "exists": Exists,
    "forall": Forall,
}
_KIND_OF = {cls: name for name, cls in _KINDS.items()}


def to_json(phi: Formula) -> dict:
    """One object per node with ``kind``, ``children`` and, where relevant, ``term``."""
    obj: dict = {"kind": _KIND_OF[type(phi)]}
    match phi:
        case Atom(symbol):
            obj["symbol"] = symbol
        case Exists(var, _) | Forall(var, _):
            obj["var"] = var
    t = core.node_term(phi)
    if t is not None:
        obj["term"] = term_to_json(t)
    obj["children"] = [to_json(c) for c in core.children(phi)]
    return obj


def from_json(obj: dict) -> Formula:
    kind = obj.get("kind")
    if kind not in _KINDS:
        raise ValueError(f"unknown node kind {kind!r}")
    kids = [from_json(c) for c in obj.get("children", [])]
    match kind:
        case "atom":
            return Atom(obj["symbol"])
        case "shift":
            return Shift(kids[0], term_from_json(obj["term"]))
        case "not":
            return Not(kids[0])
        case "and" | "or":
            return _KINDS[kind](kids[0], kids[1])
        case "box" | "diamond":
            return _KINDS[kind](term_from_json(obj["term"]), kids[0])
        case "exists" | "forall":
            return _KINDS[kind](obj["var"], kids[0])


# --------------------------------------------------------------------------
# LTL and TCL mini-languages
# --------------------------------------------------------------------------


class _LTLParser(_Parser):
    """or := and ('|' and)*; and := bin ('&' bin)*; bin := un (OP bin)?"""

    def formula(self) -> T.LTL:
        left = self.disj()
        if self.at("->"):
            self.advance()
            return T.LOr(T.LNot(left), self.formula())
        return left

    def disj(self):
        phi = self.conj()
        while self.at("|"):
            self.advance()
            phi = T.LOr(phi, self.conj())
        return phi

    def conj(self):
        phi = self.binary()
        while self.at("&"):
            self.advance()
            phi = T.LAnd(phi, self.binary())
        return phi

    def binary(self):
        left = self.unary()
        tok = self.tok
        if tok.kind == "ident" and tok.text in T.LTL_BINARY:
            self.advance()
            return T.LTL_BINARY[tok.text](left, self.binary())
        return left

    def unary(self):
        tok = self.tok
        if self.at("!"):
            self.advance()
            return T.LNot(self.unary())
        if tok.kind == "ident" and tok.text in T.LTL_UNARY:
            self.advance()
            return T.LTL_UNARY[tok.text](self.unary())
        if self.at("("):
            self.advance()
            phi = self.formula()
            self.expect(")")
            return phi
        if tok.kind == "ident" and tok.text not in T.LTL_BINARY:
            self.advance()
            return T.LAtom(tok.text)
        self.fail("expected an LTL formula")


def parse_ltl(text: str) -> T.LTL:
    """Parse LTL; ``X F G`` are prefix and ``U W M R`` right-associative infix."""
    p = _LTLParser(text)
    phi = p.formula()
    p.finish()
    return phi


class _TCLParser(_Parser):
    def formula(self):
        phi = self.conj()
        while self.at("|"):
            self.advance()
            phi = T.TOr(phi, self.conj())
        return phi

    def conj(self):
        phi = self.allen()
        while self.at("&"):
            self.advance()
            phi = T.TAnd(phi, self.allen())
        return phi

    def allen(self):
        phi = self.unary()
        while self.tok.kind == "ident" and self.tok.text in T.ALLEN_KINDS:
            kind = self.advance().text
            phi = T.Allen(kind, phi, self.unary())
        return phi

    def unary(self):
        tok = self.tok
        if self.at("!"):
            self.advance()
            return T.TNot(self.unary())
        if self.at("("):
            self.advance()
            phi = self.formula()
            self.expect(")")
            return phi
        if tok.kind == "ident" and tok.text not in T.ALLEN_KINDS:
            self.advance()
            return T.TAtom(tok.text)
        self.fail("expected a TCL formula")


def parse_tcl(text: str) -> T.TCL:
    """Parse TCL; ``A L B E D O`` are left-associative infix operators."""
    p = _TCLParser(text)
    phi = p.formula()
    p.finish()
    return phi


def _ltl_level(phi) -> int:
    match phi:
        case T.LOr():
            return 1
        case T.LAnd():
            return 2
        case T.Until() | T.WeakUntil() | T.StrongRelease() | T.Release():
            return 3
    return 4


_LTL_BIN_OP = {cls: op for op, cls in T.LTL_BINARY.items()}
_LTL_UN_OP = {cls: op for op, cls in T.LTL_UNARY.items()}


def print_ltl(phi: T.LTL, need: int = 1) -> str:
    if _ltl_level(phi) < need:
        return f"({print_ltl(phi)})"
    match phi:
        case T.LAtom(symbol):
            return symbol
        case T.LNot(body):
            return "!" + print_ltl(body, 4)
        case T.Next(body) | T.Finally(body) | T.Globally(body):
            return f"{_LTL_UN_OP[type(phi)]} {print_ltl(body, 4)}"
        case T.LAnd(left, right):
            return f"{print_ltl(left, 2)} & {print_ltl(right, 3)}"
        case T.LOr(left, right):
            return f"{print_ltl(left, 1)} | {print_ltl(right, 2)}"
        case T.Until(left, right) | T.WeakUntil(left, right) | T.StrongRelease(
            left, right
        ) | T.Release(left, right):
            return f"{print_ltl(left, 4)} {_LTL_BIN_OP[type(phi)]} {print_ltl(right, 3)}"
    raise TypeError(f"not an LTL formula: {phi!r}")


def print_tcl(phi: T.TCL, need: int = 1) -> str:
    level = {T.TOr: 1, T.TAnd: 2, T.Allen: 3}.get(type(phi), 4)
    if level < need:
        return f"({print_tcl(phi)})"
    match phi:
        case T.TAtom(symbol):
            return symbol
        case T.TNot(body):
            return "!" + print_tcl(body, 4)
        case T.TAnd(left, right):
            return f"{print_tcl(left, 2)} & {print_tcl(right, 3)}"
        case T.TOr(left, right):
            return f"{print_tcl(left, 1)} | {print_tcl(right, 2)}"
        case T.Allen(kind, left, right):
            return f"{print_tcl(left, 3)} {kind} {print_tcl(right, 4)}"
    raise TypeError(f"not a TCL formula: {phi!r}")
