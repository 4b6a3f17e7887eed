"""Predicates on judgements, decided by built-in or external oracles."""

from . import builtins
from .base import (
    BUILTINS,
    Fails,
    Holds,
    OracleConfig,
    OracleSpec,
    PredicateQuery,
    Unknown,
    Verdict,
    evaluate,
    synthesize_witness,
)
from .builtins import eal_lint

__all__ = [
    "builtins", "BUILTINS", "Fails", "Holds", "OracleConfig", "OracleSpec", "PredicateQuery",
    "Unknown", "Verdict", "evaluate", "synthesize_witness", "eal_lint",
]
