"""Degree- and component-level sentences."""

from __future__ import annotations

import numpy as np
from scipy.sparse.csgraph import connected_components

from ..errors import InvalidParamsError
from ..sampler import Graph, enumerate_triangles


def has_isolated_vertex(g: Graph) -> bool:
    return bool(np.any(g.degrees() == 0))


def isolated_path_exists(g: Graph, k: int) -> bool:
    """Some connected component is a chordless path on exactly k vertices."""
    if k < 1:
        raise InvalidParamsError(f"path length k must be >= 1, got {k}")
    count, labels = connected_components(g.to_sparse(), directed=False)
    deg = g.degrees()
    sizes = np.bincount(labels, minlength=count)
    degree_sums = np.bincount(labels, weights=deg, minlength=count)
    max_deg = np.zeros(count, dtype=np.int64)
    np.maximum.at(max_deg, labels, deg)
    # connected with k-1 edges is a tree; a tree with max degree <= 2 is a path
    paths = (sizes == k) & (degree_sums == 2 * (k - 1)) & (max_deg <= 2)
    return bool(paths.any())


def every_edge_in_4cycle(g: Graph) -> bool:
    """Every edge lies on a cycle of length 4 (vacuous without edges)."""
    adj = g.adjacency()
    u, v = g.edges()
    for x, y in zip(u.tolist(), v.tolist()):
        closing = adj[y] - {x}
        if not any(adj[w] & closing for w in adj[x] if w != y):
            return False
    return True


def pendant_sentence(g: Graph) -> bool:
    """Some vertex has exactly one neighbor and that neighbor has degree >= 3."""
    deg = g.degrees()
    leaves = np.flatnonzero(deg == 1)
    if leaves.size == 0:
        return False
    partners = g.indices[g.indptr[leaves]]
    return bool(np.any(deg[partners - 1] >= 3))


def triangle_structure_ok(g: Graph, l_star: int) -> bool:
    """Every triangle is an arithmetic triple {l, l+l*, l+2l*}."""
    if l_star < 1:
        raise InvalidParamsError(f"l* must be >= 1, got {l_star}")
    return all(
        b - a == l_star and c - b == l_star for a, b, c in enumerate_triangles(g)
    )
