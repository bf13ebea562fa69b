"""Boundary vertices: vertices on few triangles, and sentences built on them."""

from __future__ import annotations

import logging
from enum import Enum

import networkx as nx
import numpy as np

from ..errors import InvalidParamsError
from ..sampler import Graph, enumerate_triangles, triangle_counts

logger = logging.getLogger(__name__)


class ExtVariant(str, Enum):
    """Base case of the boundary recursion."""

    EXACT_ONE = "exact-one"
    AT_MOST_TWO = "at-most-two"


def _base_mask(g: Graph, variant: ExtVariant) -> np.ndarray:
    counts = triangle_counts(g)
    if ExtVariant(variant) is ExtVariant.EXACT_ONE:
        return counts == 1
    return counts <= 2


def ext_set(
    g: Graph, t: int = 1, variant: ExtVariant = ExtVariant.EXACT_ONE
) -> frozenset[int]:
    """Vertices of the t-th boundary layer.

    t = 1 selects by per-vertex triangle count. For t > 1, x belongs iff it
    lies on a triangle {x, y, z} with y or z in the (t-1)-set.
    """
    if t < 1:
        raise InvalidParamsError(f"t must be >= 1, got {t}")
    current = frozenset((np.flatnonzero(_base_mask(g, variant)) + 1).tolist())
    if t == 1:
        return current
    triangles = enumerate_triangles(g)
    for _ in range(t - 1):
        grown = set()
        for tri in triangles:
            for x in tri:
                if any(w in current for w in tri if w != x):
                    grown.add(x)
        current = frozenset(grown)
    return current


def boundary_edge_count(
    g: Graph, t: int = 1, variant: ExtVariant = ExtVariant.EXACT_ONE
) -> int:
    """Number of edges with both endpoints in the t-set."""
    members = ext_set(g, t, variant)
    if not members:
        return 0
    inside = np.zeros(g.n + 1, dtype=bool)
    inside[list(members)] = True
    u, v = g.edges()
    return int(np.count_nonzero(inside[u] & inside[v]))


def boundary_pair_sentence(g: Graph) -> bool:
    """Two adjacent vertices each on exactly one triangle."""
    inside = _base_mask(g, ExtVariant.EXACT_ONE)
    u, v = g.edges()
    return bool(np.any(inside[u - 1] & inside[v - 1]))


def psi_prime(g: Graph, l_star: int) -> bool:
    """Exactly 2*l* boundary vertices, and they pair off along edges."""
    if l_star < 1:
        raise InvalidParamsError(f"l* must be >= 1, got {l_star}")
    members = ext_set(g)
    if len(members) != 2 * l_star:
        return False
    matching = nx.max_weight_matching(g.to_networkx(members), maxcardinality=True)
    return 2 * len(matching) == len(members)
