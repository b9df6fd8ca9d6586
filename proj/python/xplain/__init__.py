"""Explanation queries for decision trees, FBDDs and CNF formulas."""

from ._core import (
    Document,
    XplainError,
    equivalent,
    is_relevant,
    is_sufficient_reason,
    is_useful,
    minimal_hitting_set_containing,
    minimal_hitting_sets,
    necessary,
    oracle_sufficient_reasons,
    relevant,
    run_cli,
    score,
    score_all,
    sufficient_reasons,
    validate,
)

XplainError.kind = property(lambda self: self.args[0])

__all__ = [
    "Document",
    "XplainError",
    "equivalent",
    "is_relevant",
    "is_sufficient_reason",
    "is_useful",
    "minimal_hitting_set_containing",
    "minimal_hitting_sets",
    "necessary",
    "oracle_sufficient_reasons",
    "relevant",
    "run_cli",
    "score",
    "score_all",
    "sufficient_reasons",
    "validate",
]
