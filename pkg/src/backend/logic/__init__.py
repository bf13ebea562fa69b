"""First-order formulas over the graph vocabulary {~, =}."""

from .evaluator import compile_formula, evaluate
from .formula import (
    And,
    Edge,
    Eq,
    Exists,
    ExistsUnique,
    Forall,
    Formula,
    Implies,
    Not,
    Or,
    free_vars,
    to_text,
)
from .parser import parse

__all__ = [
    "And",
    "Edge",
    "Eq",
    "Exists",
    "ExistsUnique",
    "Forall",
    "Formula",
    "Implies",
    "Not",
    "Or",
    "compile_formula",
    "evaluate",
    "free_vars",
    "parse",
    "to_text",
]
