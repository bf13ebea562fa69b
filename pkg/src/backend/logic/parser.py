"""Recursive descent parser for formula text.

Grammar (lowest precedence first)::

    implies    := disjunct ( "->" implies )?
    disjunct   := conjunct ( "|" conjunct )*
    conjunct   := unary ( "&" unary )*
    unary      := "!" unary | quantified | atom
    quantified := ("exists" | "forall" | "exists!") VAR implies
    atom       := "(" implies ")" | VAR ("~" | "=") VAR

Quantifier bodies extend as far right as possible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import FormulaSyntaxError
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
)

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<kw>exists!|exists\b|forall\b)|(?P<var>[a-z][a-z0-9_]*)"
    r"|(?P<op>->|[~=!&|()]))"
)
_QUANTIFIERS = {"exists": Exists, "forall": Forall, "exists!": ExistsUnique}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        match = _TOKEN_RE.match(text, pos)
        if match is None or match.end() == pos:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise FormulaSyntaxError(f"unexpected character {text[start]!r}", start)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class FormulaParser:
    """Parses one formula; instances are single use."""

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    def _peek(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def _expect(self, text: str) -> Token:
        token = self._peek()
        if token.text != text or token.kind == "end":
            found = token.text or "end of input"
            raise FormulaSyntaxError(
                f"expected '{text}' but found '{found}'", token.position
            )
        return self._advance()

    def _variable(self) -> str:
        token = self._peek()
        if token.kind != "var":
            found = token.text or "end of input"
            raise FormulaSyntaxError(
                f"expected a variable, found '{found}'", token.position
            )
        return self._advance().text

    def parse(self) -> Formula:
        formula = self._implies()
        token = self._peek()
        if token.kind != "end":
            raise FormulaSyntaxError(f"unexpected '{token.text}'", token.position)
        return formula

    def _implies(self) -> Formula:
        left = self._disjunct()
        if self._peek().text == "->":
            self._advance()
            return Implies(left, self._implies())
        return left

    def _disjunct(self) -> Formula:
        left = self._conjunct()
        while self._peek().text == "|":
            self._advance()
            left = Or(left, self._conjunct())
        return left

    def _conjunct(self) -> Formula:
        left = self._unary()
        while self._peek().text == "&":
            self._advance()
            left = And(left, self._unary())
        return left

    def _unary(self) -> Formula:
        token = self._peek()
        if token.text == "!" and token.kind == "op":
            self._advance()
            return Not(self._unary())
        if token.kind == "kw":
            self._advance()
            var = self._variable()
            return _QUANTIFIERS[token.text](var, self._implies())
        return self._atom()

    def _atom(self) -> Formula:
        token = self._peek()
        if token.text == "(":
            self._advance()
            inner = self._implies()
            self._expect(")")
            return inner
        left = self._variable()
        op = self._peek()
        if op.text == "~":
            self._advance()
            return Edge(left, self._variable())
        if op.text == "=":
            self._advance()
            return Eq(left, self._variable())
        found = op.text or "end of input"
        raise FormulaSyntaxError(
            f"expected '~' or '=' but found '{found}'", op.position
        )


def parse(text: str) -> Formula:
    """Parse formula text into an AST."""
    return FormulaParser(text).parse()
