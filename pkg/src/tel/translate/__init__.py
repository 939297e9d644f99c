"""Front-ends for LTL and Allen-style interval formulas."""

from .ast import ALLEN_KINDS
from .blocks import block_closed, block_open
from .ltl import ltl_eval, ltl_to_tel
from .tcl import ROWS, tcl_eval, tcl_to_tel

__all__ = [
    "ALLEN_KINDS",
    "ROWS",
    "block_closed",
    "block_open",
    "ltl_eval",
    "ltl_to_tel",
    "tcl_eval",
    "tcl_to_tel",
]
