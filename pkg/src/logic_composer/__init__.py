"""Compose problems with a given logical structure and check them numerically."""

from .formula import (
    And,
    Atom,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Xor,
    are_equivalent,
    atoms,
    evaluate,
    find_falsifying,
    is_tautology,
    normalize,
    truth_table,
)
from .text import ParseError, parse, to_text

__version__ = "0.1.0"
