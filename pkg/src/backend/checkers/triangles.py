"""Chains of triangles and their candidate supports."""

from __future__ import annotations

import logging

import numpy as np

from ..errors import InvalidParamsError
from ..sampler import Graph

logger = logging.getLogger(__name__)


def _check_k(k: int) -> None:
    if k < 2 or k % 2:
        raise InvalidParamsError(f"k must be even and >= 2, got {k}")


def candidates(n: int, l_star: int, k: int, m: int) -> list[tuple[int, ...]]:
    """Candidate sequences (m_0, ..., m_k) with m_0 = m as their least element.

    Each block {m_i, m_{i+1}, m_{i+2}} (i even) is {l, l+l*, l+2l*} for some
    l, with no repetitions. Counting every candidate from its least element
    keeps at most two per m.
    """
    _check_k(k)
    if l_star < 1:
        raise InvalidParamsError(f"l* must be >= 1, got {l_star}")
    if not 1 <= m < n - k * l_star:
        raise InvalidParamsError(
            f"need 1 <= m < n - k*l* = {n - k * l_star}, got m={m}"
        )

    found: list[tuple[int, ...]] = []

    def grow(seq: list[int]) -> None:
        if len(seq) == k + 1:
            found.append(tuple(seq))
            return
        start = seq[-1]
        for low in (start, start - l_star, start - 2 * l_star):
            block = (low, low + l_star, low + 2 * l_star)
            if low < m or block[-1] > n:
                continue
            rest = [x for x in block if x != start]
            if any(x in seq for x in rest):
                continue
            for a, b in (rest, rest[::-1]):
                grow([*seq, a, b])

    grow([m])
    return found


def _arithmetic_chain(g: Graph, k: int, l_star: int) -> bool:
    n = g.n
    span = k * l_star
    count = n - span
    if count < 1:
        return False
    step = g.edges_at_distance(l_star)
    double = g.edges_at_distance(2 * l_star)
    deg = g.degrees()
    ok = np.ones(count, dtype=bool)
    for j in range(k):
        ok &= step[j * l_star : j * l_star + count]
    for i in range(0, k, 2):
        ok &= double[i * l_star : i * l_star + count]
    for j in range(k + 1):
        want = 4 if (j % 2 == 0 and 0 < j < k) else 2
        ok &= deg[j * l_star : j * l_star + count] == want
    return bool(ok.any())


def _triangle_starts(g: Graph) -> list[tuple[int, int, int]]:
    """(x0, a, b) for degree-2 vertices x0 whose two neighbors a < b are adjacent."""
    deg = g.degrees()
    x0 = np.flatnonzero(deg == 2) + 1
    if x0.size == 0:
        return []
    a = g.indices[g.indptr[x0 - 1]]
    b = g.indices[g.indptr[x0 - 1] + 1]
    u, v = g.edges()
    keys = u * (g.n + 1) + v
    lookup = a * (g.n + 1) + b
    pos = np.searchsorted(keys, lookup)
    hit = np.zeros(lookup.size, dtype=bool)
    inside = pos < keys.size
    hit[inside] = keys[pos[inside]] == lookup[inside]
    return list(zip(x0[hit].tolist(), a[hit].tolist(), b[hit].tolist()))


def _generic_chain(g: Graph, k: int) -> bool:
    deg = g.degrees()

    def walk(chain: list[int]) -> bool:
        if len(chain) == k + 1:
            return deg[chain[-1] - 1] == 2
        x = chain[-1]
        if deg[x - 1] != 4:
            return False
        others = [w for w in g.neighbors(x).tolist() if w not in (chain[-2], chain[-3])]
        if len(others) != 2 or not g.has_edge(*others):
            return False
        if any(w in chain for w in others):
            return False
        for odd, even in (others, others[::-1]):
            if deg[odd - 1] == 2 and walk([*chain, odd, even]):
                return True
        return False

    for x0, a, b in _triangle_starts(g):
        for x1, x2 in ((a, b), (b, a)):
            if deg[x1 - 1] == 2 and walk([x0, x1, x2]):
                return True
    return False


def chain_of_triangles(g: Graph, k: int, l_star: int | None = None) -> bool:
    """Whether some (x_0, ..., x_k) is a chain of k/2 triangles.

    Triangles {x_i, x_{i+1}, x_{i+2}} for even i; x_0, x_k and odd x_i have
    degree 2, interior even x_i degree 4. Passing ``l_star`` asserts that
    every triangle of g is an arithmetic triple with gap l*, in which case
    only the arithmetic candidates are tested.
    """
    _check_k(k)
    if l_star is not None:
        return _arithmetic_chain(g, k, l_star)
    return _generic_chain(g, k)
