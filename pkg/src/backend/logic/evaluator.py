"""Naive Tarskian evaluation of formulas on sampled graphs.

Formulas are compiled once into nested closures; quantifiers range over
[1, n]. Cost is O(n^q) for q nested quantifiers, which is fine for the small
graphs the evaluator is used on.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping
from functools import lru_cache

from ..errors import BindingError, InvalidVertexError
from ..sampler import Graph
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
)

Adjacency = list[frozenset[int]]
Compiled = Callable[[Adjacency, int, dict[str, int]], bool]

_MISSING = object()


def _quantifier(var: str, body: Compiled, kind: type) -> Compiled:
    def run(adj: Adjacency, n: int, env: dict[str, int]) -> bool:
        saved = env.get(var, _MISSING)
        try:
            if kind is Exists:
                for x in range(1, n + 1):
                    env[var] = x
                    if body(adj, n, env):
                        return True
                return False
            if kind is Forall:
                for x in range(1, n + 1):
                    env[var] = x
                    if not body(adj, n, env):
                        return False
                return True
            witnesses = 0
            for x in range(1, n + 1):
                env[var] = x
                if body(adj, n, env):
                    witnesses += 1
                    if witnesses > 1:
                        return False
            return witnesses == 1
        finally:
            if saved is _MISSING:
                env.pop(var, None)
            else:
                env[var] = saved

    return run


@lru_cache(maxsize=256)
def compile_formula(phi: Formula) -> Compiled:
    """Closure computing the truth value of ``phi`` from (adjacency, n, env)."""
    if isinstance(phi, Edge):
        a, b = phi.left, phi.right
        return lambda adj, n, env: env[b] in adj[env[a]]
    if isinstance(phi, Eq):
        a, b = phi.left, phi.right
        return lambda adj, n, env: env[a] == env[b]
    if isinstance(phi, Not):
        inner = compile_formula(phi.body)
        return lambda adj, n, env: not inner(adj, n, env)
    if isinstance(phi, (And, Or, Implies)):
        left = compile_formula(phi.left)
        right = compile_formula(phi.right)
        if isinstance(phi, And):
            return lambda adj, n, env: left(adj, n, env) and right(adj, n, env)
        if isinstance(phi, Or):
            return lambda adj, n, env: left(adj, n, env) or right(adj, n, env)
        return lambda adj, n, env: (not left(adj, n, env)) or right(adj, n, env)
    if isinstance(phi, (Exists, Forall, ExistsUnique)):
        return _quantifier(phi.var, compile_formula(phi.body), type(phi))
    raise TypeError(f"not a formula node: {phi!r}")


def evaluate(
    g: Graph, phi: Formula, assignment: Mapping[str, int] | None = None
) -> bool:
    """Truth value of ``phi`` in ``g`` under ``assignment``."""
    env = dict(assignment or {})
    unbound = sorted(free_vars(phi) - env.keys())
    if unbound:
        raise BindingError(f"unassigned free variables: {', '.join(unbound)}")
    for var, vertex in env.items():
        if not 1 <= vertex <= g.n:
            raise InvalidVertexError(f"{var} := {vertex} outside [1, {g.n}]")
    return compile_formula(phi)(g.adjacency(), g.n, env)
