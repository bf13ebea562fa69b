"""Formula AST and its canonical text form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Edge:
    left: str
    right: str


@dataclass(frozen=True)
class Eq:
    left: str
    right: str


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class ExistsUnique:
    var: str
    body: "Formula"


Formula = Union[Edge, Eq, Not, And, Or, Implies, Exists, Forall, ExistsUnique]

QUANTIFIER_KEYWORDS = {Exists: "exists", Forall: "forall", ExistsUnique: "exists!"}
BINARY_SYMBOLS = {And: "&", Or: "|", Implies: "->"}


def free_vars(phi: Formula) -> frozenset[str]:
    if isinstance(phi, (Edge, Eq)):
        return frozenset((phi.left, phi.right))
    if isinstance(phi, Not):
        return free_vars(phi.body)
    if isinstance(phi, (And, Or, Implies)):
        return free_vars(phi.left) | free_vars(phi.right)
    return free_vars(phi.body) - {phi.var}


def to_text(phi: Formula) -> str:
    """Print with every compound subformula parenthesized; parse inverts it."""
    if isinstance(phi, Edge):
        return f"{phi.left} ~ {phi.right}"
    if isinstance(phi, Eq):
        return f"{phi.left} = {phi.right}"
    if isinstance(phi, Not):
        return f"!({to_text(phi.body)})"
    if isinstance(phi, (And, Or, Implies)):
        symbol = BINARY_SYMBOLS[type(phi)]
        return f"({to_text(phi.left)} {symbol} {to_text(phi.right)})"
    keyword = QUANTIFIER_KEYWORDS[type(phi)]
    return f"({keyword} {phi.var} ({to_text(phi.body)}))"
