"""Reproducible sampling of M^n_p and basic graph queries.

Each distance band l draws from its own Philox stream keyed by (seed, l), so
the draw deciding edge {i, i+l} depends only on (seed, l, i) and not on n or
on the order in which bands are visited.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable

import networkx as nx
import numpy as np
from scipy import sparse

from .errors import InvalidParamsError, InvalidVertexError
from .models import SampleSpec
from .seq import probabilities

logger = logging.getLogger(__name__)

# bands with p below this use geometric skipping instead of one uniform per pair
DENSE_THRESHOLD = 0.05


class Graph:
    """Immutable simple graph on vertices 1..n stored as sorted CSR rows."""

    __slots__ = ("n", "indptr", "indices", "_adjacency")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray):
        self.n = int(n)
        self.indptr = indptr
        self.indices = indices
        self._adjacency: list[frozenset[int]] | None = None

    @classmethod
    def from_arrays(cls, n: int, u: np.ndarray, v: np.ndarray) -> "Graph":
        """Build from endpoint arrays (1-based, u < v, no duplicates)."""
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        rows = np.concatenate([u, v])
        cols = np.concatenate([v, u])
        order = np.lexsort((cols, rows))
        indptr = np.zeros(n + 1, dtype=np.int64)
        if rows.size:
            np.cumsum(np.bincount(rows - 1, minlength=n), out=indptr[1:])
        return cls(n, indptr, cols[order])

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        pairs = set()
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b or not (1 <= a <= n and 1 <= b <= n):
                raise InvalidVertexError(f"bad edge ({a}, {b}) for n={n}")
            pairs.add((min(a, b), max(a, b)))
        ordered = sorted(pairs)
        u = np.array([a for a, _ in ordered], dtype=np.int64)
        v = np.array([b for _, b in ordered], dtype=np.int64)
        return cls.from_arrays(n, u, v)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls.from_arrays(n, np.zeros(0), np.zeros(0))

    def _check_vertex(self, x: int) -> None:
        if not 1 <= x <= self.n:
            raise InvalidVertexError(f"vertex {x} outside [1, {self.n}]")

    def neighbors(self, x: int) -> np.ndarray:
        self._check_vertex(x)
        return self.indices[self.indptr[x - 1] : self.indptr[x]]

    def degrees(self) -> np.ndarray:
        """Degree array; position x-1 holds the degree of vertex x."""
        return np.diff(self.indptr)

    def has_edge(self, x: int, y: int) -> bool:
        row = self.neighbors(x)
        pos = np.searchsorted(row, y)
        return bool(pos < row.size and row[pos] == y)

    @property
    def edge_count(self) -> int:
        return int(self.indices.size // 2)

    def edges(self) -> tuple[np.ndarray, np.ndarray]:
        """Endpoint arrays (u, v) with u < v in ascending lexicographic order."""
        rows = np.repeat(np.arange(1, self.n + 1), self.degrees())
        keep = rows < self.indices
        return rows[keep], self.indices[keep]

    def edges_at_distance(self, l: int) -> np.ndarray:
        """Boolean mask of length max(n-l, 0); entry i-1 marks edge {i, i+l}."""
        mask = np.zeros(max(self.n - l, 0), dtype=bool)
        u, v = self.edges()
        hit = (v - u) == l
        mask[u[hit] - 1] = True
        return mask

    def adjacency(self) -> list[frozenset[int]]:
        """Neighbor sets indexed by vertex (index 0 unused)."""
        if self._adjacency is None:
            self._adjacency = [frozenset()] + [
                frozenset(self.indices[self.indptr[x] : self.indptr[x + 1]].tolist())
                for x in range(self.n)
            ]
        return self._adjacency

    def to_sparse(self) -> sparse.csr_matrix:
        data = np.ones(self.indices.size, dtype=np.int64)
        return sparse.csr_matrix(
            (data, self.indices - 1, self.indptr), shape=(self.n, self.n)
        )

    def to_networkx(self, vertices: Iterable[int] | None = None) -> nx.Graph:
        graph = nx.Graph()
        if vertices is None:
            graph.add_nodes_from(range(1, self.n + 1))
            u, v = self.edges()
            graph.add_edges_from(zip(u.tolist(), v.tolist()))
            return graph
        keep = set(vertices)
        graph.add_nodes_from(keep)
        adj = self.adjacency()
        graph.add_edges_from(
            (x, y) for x in keep for y in adj[x] if y in keep and x < y
        )
        return graph

    def dump(self) -> str:
        u, v = self.edges()
        lines = [f"n {self.n}"] + [f"e {a} {b}" for a, b in zip(u.tolist(), v.tolist())]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse_dump(cls, text: str) -> "Graph":
        n = None
        edges = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "n" and len(parts) == 2 and n is None:
                n = int(parts[1])
            elif parts[0] == "e" and len(parts) == 3:
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise InvalidParamsError(f"bad dump line {lineno}: {line!r}")
        if n is None:
            raise InvalidParamsError("dump has no 'n <count>' header")
        return cls.from_edges(n, edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


def band_generator(seed: int, l: int) -> np.random.Generator:
    """Counter-based stream for distance band l."""
    key = np.array([seed, l], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def derive_seed(seed: int, index: int) -> int:
    """Independent 64-bit seed for trial ``index`` of a run seeded by ``seed``."""
    state = np.random.SeedSequence(entropy=seed, spawn_key=(index,)).generate_state(
        1, dtype=np.uint64
    )
    return int(state[0])


def _band_hits(rng: np.random.Generator, p: float, limit: int) -> np.ndarray:
    """Left endpoints i in [1, limit] of the edges present in one band."""
    if p >= 1.0:
        return np.arange(1, limit + 1, dtype=np.int64)
    if p >= DENSE_THRESHOLD:
        return np.flatnonzero(rng.random(limit) < p) + 1
    hits = []
    last = 0
    chunk = int(limit * p * 1.2) + 16
    while last < limit:
        positions = last + np.cumsum(rng.geometric(p, size=chunk))
        hits.append(positions[positions <= limit])
        last = int(positions[-1])
    return np.concatenate(hits) if hits else np.zeros(0, dtype=np.int64)


def sample_from_probabilities(probs: np.ndarray, n: int, seed: int) -> Graph:
    """Sample on [n] given p_1..p_{n-1} as an array (position 0 is p_1)."""
    if n < 1:
        raise InvalidParamsError(f"n must be >= 1, got {n}")
    us, vs = [], []
    for idx in np.flatnonzero(probs[: n - 1] > 0):
        l = int(idx) + 1
        hits = _band_hits(band_generator(seed, l), float(probs[idx]), n - l)
        if hits.size:
            us.append(hits)
            vs.append(hits + l)
    if not us:
        return Graph.empty(n)
    return Graph.from_arrays(n, np.concatenate(us), np.concatenate(vs))


def sample(spec: SampleSpec) -> Graph:
    """Draw one graph from M^n_p; identical specs give identical graphs."""
    probs = probabilities(spec.seq, spec.n - 1)
    graph = sample_from_probabilities(probs, spec.n, spec.seed)
    logger.debug(f"sampled n={spec.n} seed={spec.seed}: {graph.edge_count} edges")
    return graph


def degree(g: Graph, x: int) -> int:
    return int(g.neighbors(x).size)


def enumerate_triangles(g: Graph) -> list[tuple[int, int, int]]:
    """All triangles as sorted triples in ascending lexicographic order."""
    triangles = []
    for u in range(1, g.n + 1):
        row = g.neighbors(u)
        higher = row[row > u]
        for v in higher.tolist():
            common = np.intersect1d(higher, g.neighbors(v), assume_unique=True)
            for w in common[common > v].tolist():
                triangles.append((u, v, w))
    return triangles


def triangle_counts(g: Graph) -> np.ndarray:
    """Per-vertex triangle counts; position x-1 holds the count of vertex x."""
    if g.edge_count == 0:
        return np.zeros(g.n, dtype=np.int64)
    a = g.to_sparse()
    closed = a.multiply(a @ a)
    return np.asarray(closed.sum(axis=1)).ravel() // 2
