"""Sentence registry: identifiers, fast checkers and their formula texts.

Every sentence pairs a specialized checker with a first-order formula in
the parser's syntax; the two agree on every graph (the chain checker with
an explicit l* only on graphs whose triangles are l*-arithmetic triples).
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from functools import cached_property, lru_cache

from ..errors import InvalidParamsError, UnknownSentenceError
from ..logic import Formula, evaluate, parse
from ..sampler import Graph
from .boundary import boundary_pair_sentence, psi_prime
from .pairs import phi3_exists
from .structure import (
    every_edge_in_4cycle,
    has_isolated_vertex,
    isolated_path_exists,
    pendant_sentence,
)
from .triangles import chain_of_triangles

logger = logging.getLogger(__name__)

DEFAULT_STEPS = 4

KNOWN_SENTENCES = [
    "isolated",
    "chain_triangles:k[:lstar]",
    "isolated_path:k",
    "edge_in_4cycle",
    "boundary_pair",
    "psi_prime:lstar",
    "pendant",
    "phi3_exists:K",
]


@dataclass(frozen=True)
class Sentence:
    sentence_id: str
    check: Callable[[Graph], bool]
    formula_text: str
    # set when the checker assumes every triangle is an arithmetic triple with this gap
    proper_gap: int | None = None

    @cached_property
    def formula(self) -> Formula:
        return parse(self.formula_text)

    def holds(self, g: Graph) -> bool:
        return bool(self.check(g))

    def holds_naively(self, g: Graph) -> bool:
        return evaluate(g, self.formula)


# formula text builders; every operand is parenthesized so quantifier
# bodies never swallow a following conjunct


def _all(parts: Sequence[str]) -> str:
    return " & ".join(f"({p})" for p in parts)


def _any(parts: Sequence[str]) -> str:
    return " | ".join(f"({p})" for p in parts)


def _exists(var: str, body: str) -> str:
    return f"exists {var} ({body})"


def _forall(var: str, body: str) -> str:
    return f"forall {var} ({body})"


def _neq(a: str, b: str) -> str:
    return f"!({a} = {b})"


def _degree_is(x: str, d: int, tag: str) -> str:
    other = f"{tag}0"
    if d == 0:
        return _forall(other, f"!({x} ~ {other})")
    ws = [f"{tag}{i}" for i in range(1, d + 1)]
    named = _any([f"{other} = {w}" for w in ws])
    body = _forall(other, f"({x} ~ {other}) -> ({named})")
    for i in range(d, 0, -1):
        w = ws[i - 1]
        distinct = [_neq(w, v) for v in ws[: i - 1]]
        body = _exists(w, _all([f"{x} ~ {w}", *distinct, body]))
    return body


def _degree_at_least(x: str, d: int, tag: str) -> str:
    ws = [f"{tag}{i}" for i in range(1, d + 1)]
    body = None
    for i in range(d, 0, -1):
        w = ws[i - 1]
        parts = [f"{x} ~ {w}", *[_neq(w, v) for v in ws[: i - 1]]]
        body = _exists(w, _all(parts if body is None else [*parts, body]))
    return body


def _nest(
    variables: Sequence[str], constraints: Sequence[list[str]], tail: str | None
) -> str:
    """exists v_0 (c_0 & exists v_1 (c_1 & ... & tail))."""
    body = tail
    for var, parts in zip(reversed(variables), reversed(constraints)):
        inner = parts if body is None else [*parts, body]
        body = _exists(var, _all(inner) if inner else f"{var} = {var}")
    return body


def chain_formula(k: int) -> str:
    xs = [f"x{j}" for j in range(k + 1)]
    constraints = []
    for j, x in enumerate(xs):
        parts = [_neq(x, xs[i]) for i in range(j)]
        if j % 2 == 1:
            parts.append(f"{xs[j - 1]} ~ {x}")
        elif j >= 2:
            parts += [f"{xs[j - 2]} ~ {x}", f"{xs[j - 1]} ~ {x}"]
        want = 4 if (j % 2 == 0 and 0 < j < k) else 2
        parts.append(_degree_is(x, want, f"w{j}_"))
        constraints.append(parts)
    return _nest(xs, constraints, None)


def isolated_path_formula(k: int) -> str:
    xs = [f"x{j}" for j in range(1, k + 1)]
    constraints = []
    for j, x in enumerate(xs):
        parts = [_neq(x, xs[i]) for i in range(j)]
        if j >= 1:
            parts.append(f"{xs[j - 1]} ~ {x}")
        parts += [f"!({xs[i]} ~ {x})" for i in range(j - 1)]
        constraints.append(parts)
    outside = _all([_neq("y", x) for x in xs])
    closed = _forall("y", f"({outside}) -> ({_all([f'!({x} ~ y)' for x in xs])})")
    return _nest(xs, constraints, closed)


def edge_in_4cycle_formula() -> str:
    closing = _exists("v", _all(["u ~ v", "v ~ y", _neq("v", "x")]))
    path = _exists("u", _all(["x ~ u", _neq("u", "y"), closing]))
    return _forall("x", _forall("y", f"(x ~ y) -> ({path})"))


def ext_formula(x: str, tag: str) -> str:
    """x lies on exactly one triangle."""
    a, b, c, d = (f"{tag}{s}" for s in "abcd")
    same = _any(
        [_all([f"{c} = {a}", f"{d} = {b}"]), _all([f"{c} = {b}", f"{d} = {a}"])]
    )
    triangle = _all([f"{x} ~ {c}", f"{x} ~ {d}", f"{c} ~ {d}"])
    unique = _forall(c, _forall(d, f"({triangle}) -> ({same})"))
    second = _exists(b, _all([f"{x} ~ {b}", f"{a} ~ {b}", unique]))
    return _exists(a, _all([f"{x} ~ {a}", second]))


def boundary_pair_formula() -> str:
    pair = _all(["x ~ y", ext_formula("x", "p"), ext_formula("y", "q")])
    return _exists("x", _exists("y", pair))


def psi_prime_formula(l_star: int) -> str:
    ss = [f"s{i}" for i in range(2 * l_star)]
    constraints = []
    for i, s in enumerate(ss):
        parts = [_neq(s, ss[j]) for j in range(i)]
        if i % 2 == 1:
            parts.append(f"{ss[i - 1]} ~ {s}")
        parts.append(ext_formula(s, f"e{i}_"))
        constraints.append(parts)
    listed = _any([f"y = {s}" for s in ss])
    closed = _forall("y", f"({ext_formula('y', 'f')}) -> ({listed})")
    return _nest(ss, constraints, closed)


def pendant_formula() -> str:
    return _exists(
        "x",
        _all(
            [
                "exists! y (x ~ y)",
                _forall("z", f"(x ~ z) -> ({_degree_at_least('z', 3, 'w')})"),
            ]
        ),
    )


def _relaxed_formula(a: str, b: str, level: int) -> str:
    c, d = f"r{level}", f"s{level}"
    inner = _all([f"{b} ~ {d}", _neq(d, a), _neq(c, d), f"!({c} ~ {d})"])
    return _exists(c, _all([f"{a} ~ {c}", _neq(c, b), _exists(d, inner)]))


def certified_formula(a: str, b: str, steps: int) -> str:
    """At most steps-1 strict moves from (a, b) followed by a relaxed one."""
    relaxed = _relaxed_formula(a, b, steps)
    if steps == 1:
        return relaxed
    c, d = f"c{steps}", f"d{steps}"
    deeper = certified_formula(c, d, steps - 1)
    strict = _exists(
        c,
        _all(
            [
                f"{a} ~ {c}",
                _neq(c, b),
                _exists(
                    d,
                    _all([f"{b} ~ {d}", _neq(d, a), f"{c} ~ {d}", deeper]),
                ),
            ]
        ),
    )
    return _any([relaxed, strict])


def phi3_formula(steps: int) -> str:
    uncertified = f"!({certified_formula('x', 'y', steps)})"
    return _exists("x", f"exists! y ({_all(['x ~ y', uncertified])})")


def _int_args(sentence_id: str, args: list[str]) -> list[int]:
    try:
        return [int(a) for a in args]
    except ValueError as exc:
        raise InvalidParamsError(f"non-integer parameter in '{sentence_id}'") from exc


def _positive(sentence_id: str, name: str, value: int) -> int:
    if value < 1:
        raise InvalidParamsError(f"{name} must be >= 1 in '{sentence_id}', got {value}")
    return value


@lru_cache(maxsize=128)
def resolve_sentence(sentence_id: str) -> Sentence:
    """Look up a sentence by identifier, e.g. ``chain_triangles:4:2``."""
    name, *raw = sentence_id.strip().split(":")
    args = _int_args(sentence_id, raw)

    def arity(*allowed: int) -> None:
        if len(args) not in allowed:
            raise InvalidParamsError(
                f"'{name}' takes {' or '.join(map(str, allowed))} parameters, "
                f"got {len(args)}"
            )

    if name == "isolated":
        arity(0)
        return Sentence(
            sentence_id, has_isolated_vertex, _exists("x", _forall("y", "!(x ~ y)"))
        )
    if name == "chain_triangles":
        arity(1, 2)
        k = args[0]
        if k < 2 or k % 2:
            raise InvalidParamsError(f"k must be even and >= 2 in '{sentence_id}'")
        l_star = _positive(sentence_id, "l*", args[1]) if len(args) == 2 else None
        return Sentence(
            sentence_id,
            lambda g: chain_of_triangles(g, k, l_star),
            chain_formula(k),
            proper_gap=l_star,
        )
    if name == "isolated_path":
        arity(1)
        k = _positive(sentence_id, "k", args[0])
        return Sentence(
            sentence_id, lambda g: isolated_path_exists(g, k), isolated_path_formula(k)
        )
    if name == "edge_in_4cycle":
        arity(0)
        return Sentence(sentence_id, every_edge_in_4cycle, edge_in_4cycle_formula())
    if name == "boundary_pair":
        arity(0)
        return Sentence(sentence_id, boundary_pair_sentence, boundary_pair_formula())
    if name == "psi_prime":
        arity(1)
        l_star = _positive(sentence_id, "l*", args[0])
        return Sentence(
            sentence_id, lambda g: psi_prime(g, l_star), psi_prime_formula(l_star)
        )
    if name == "pendant":
        arity(0)
        return Sentence(sentence_id, pendant_sentence, pendant_formula())
    if name == "phi3_exists":
        arity(0, 1)
        steps = _positive(sentence_id, "K", args[0]) if args else DEFAULT_STEPS
        return Sentence(
            sentence_id, lambda g: phi3_exists(g, steps), phi3_formula(steps)
        )
    raise UnknownSentenceError(sentence_id, KNOWN_SENTENCES)
