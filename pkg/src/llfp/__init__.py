"""A proof-checking kernel for the canonical logical framework with locks.

The main entry points are :class:`llfp.checker.Checker` for judgements,
:mod:`llfp.hsubst` for hereditary substitution and :mod:`llfp.surface` for
reading and printing ``.llfp`` text.
"""

from .checker import Checker, Derivation, check_judgement
from .errors import CheckError, LLFPError, ParseError
from .syntax import Context, Mode, Signature, alpha_eq, erase

__version__ = "0.1.0"

__all__ = [
    "Checker", "Derivation", "check_judgement", "CheckError", "LLFPError", "ParseError",
    "Context", "Mode", "Signature", "alpha_eq", "erase",
]
