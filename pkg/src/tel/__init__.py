"""Temporal Ensemble Logic over discrete time: syntax, model checking,
rewriting, translations and encodings."""

from .core import (
    And,
    Atom,
    Box,
    Const,
    Diamond,
    Exists,
    Forall,
    Formula,
    Not,
    Or,
    Shift,
    Sum,
    TimeTerm,
    Var,
    free_vars,
    shift,
    subst,
    term_eval,
)
from .errors import TelError
from .evaluator import (
    EvalConfig,
    Evaluator,
    Truth3,
    eval,
    eval_exact_qf,
    holds_infinitely_often,
    language_member,
)
from .syntax import parse_formula, print_formula
from .words import Alphabet, FiniteTrace, LassoWord, from_finite, parse_word

from .rewrite import expand_constant_modalities, negation_free, normalize_shifts, simplify, unfold_exists, unfold_forall

__version__ = "0.1.0"

__all__ = [
    "And", "Atom", "Box", "Const", "Diamond", "Exists", "Forall", "Formula", "Not", "Or", "Shift", "Sum",
    "TimeTerm", "Var", "free_vars", "shift", "subst", "term_eval",
    "TelError",
    "EvalConfig", "Evaluator", "Truth3", "eval", "eval_exact_qf", "holds_infinitely_often", "language_member",
    "parse_formula", "print_formula",
    "Alphabet", "FiniteTrace", "LassoWord", "from_finite", "parse_word",
    "expand_constant_modalities", "negation_free", "normalize_shifts", "simplify", "unfold_exists", "unfold_forall",
]
