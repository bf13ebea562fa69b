"""Edge-pair moves and the vertices with exactly one uncertified edge.

A strict move takes the edge-pair (a, b) to (c, d) with a~c, b~d, c~d,
a != d and b != c. A relaxed move drops c~d in favor of c != d and not c~d.
An edge {y, z} is certified at budget K when at most K-1 strict moves
followed by one relaxed move start from it. Moves are symmetric under
swapping both pairs, so states are kept unordered.
"""

from __future__ import annotations

import logging

from ..errors import InvalidPairError, InvalidParamsError
from ..sampler import Graph

logger = logging.getLogger(__name__)

Adjacency = list[frozenset[int]]


def _relaxed_move(adj: Adjacency, a: int, b: int) -> bool:
    rails = adj[b] - {a}
    for c in adj[a]:
        if c != b and rails - adj[c] - {c}:
            return True
    return False


def _strict_moves(adj: Adjacency, a: int, b: int):
    rails = adj[b] - {a}
    for c in adj[a]:
        if c == b:
            continue
        for d in rails & adj[c]:
            yield c, d


def _certified(adj: Adjacency, y: int, z: int, steps: int) -> bool:
    frontier = [(y, z)]
    seen = {frozenset((y, z))}
    for depth in range(steps):
        if any(_relaxed_move(adj, a, b) for a, b in frontier):
            return True
        if depth == steps - 1:
            break
        following = []
        for a, b in frontier:
            for c, d in _strict_moves(adj, a, b):
                key = frozenset((c, d))
                if key not in seen:
                    seen.add(key)
                    following.append((c, d))
        if not following:
            break
        frontier = following
    return False


def _check_steps(steps: int) -> None:
    if steps < 1:
        raise InvalidParamsError(f"step bound K must be >= 1, got {steps}")


def phi_pairs(g: Graph, y: int, z: int, steps: int) -> bool:
    """Whether edge {y, z} is certified within ``steps`` moves."""
    _check_steps(steps)
    if y == z or not g.has_edge(y, z):
        raise InvalidPairError(f"({y}, {z}) is not an edge")
    return _certified(g.adjacency(), y, z, steps)


def _iter_phi3(g: Graph, steps: int):
    adj = g.adjacency()
    cache: dict[tuple[int, int], bool] = {}
    for x in range(1, g.n + 1):
        uncertified = 0
        for y in adj[x]:
            key = (x, y) if x < y else (y, x)
            if key not in cache:
                cache[key] = _certified(adj, x, y, steps)
            if not cache[key]:
                uncertified += 1
                if uncertified > 1:
                    break
        if uncertified == 1:
            yield x


def phi3_vertices(g: Graph, steps: int) -> frozenset[int]:
    """Vertices with exactly one neighbor along an uncertified edge."""
    _check_steps(steps)
    return frozenset(_iter_phi3(g, steps))


def phi3_exists(g: Graph, steps: int) -> bool:
    _check_steps(steps)
    return next(_iter_phi3(g, steps), None) is not None
