"""Unit tests for sampling M^n_p and the graph queries."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError
from scipy import stats

from src.backend.errors import InvalidParamsError, InvalidVertexError
from src.backend.models import ProbSeq, SampleSpec, TailRule
from src.backend.sampler import (
    Graph,
    degree,
    derive_seed,
    enumerate_triangles,
    sample,
    triangle_counts,
)


def draw(prefix, n, seed=0, tail=None):
    seq = ProbSeq(prefix=tuple(prefix), tail=tail or TailRule())
    return sample(SampleSpec(seq=seq, n=n, seed=seed))


class TestSample:
    def test_all_zero_is_edgeless(self):
        g = draw([], 5)
        assert g.n == 5
        assert g.edge_count == 0

    def test_certain_band_is_a_path(self):
        g = draw([1.0], 4)
        u, v = g.edges()
        assert list(zip(u.tolist(), v.tolist())) == [(1, 2), (2, 3), (3, 4)]

    def test_single_vertex(self):
        assert draw([0.5], 1).edge_count == 0

    def test_n_zero_rejected(self):
        with pytest.raises(ValidationError):
            draw([0.5], 0)

    def test_same_spec_same_graph(self):
        assert draw([0.3, 0.2], 60, seed=7) == draw([0.3, 0.2], 60, seed=7)

    def test_band_draws_do_not_depend_on_n(self):
        small = draw([0.4, 0.02], 50, seed=11)
        large = draw([0.4, 0.02], 80, seed=11)
        for l in (1, 2):
            assert np.array_equal(
                small.edges_at_distance(l), large.edges_at_distance(l)[: 50 - l]
            )

    def test_distance_two_mean(self):
        counts = [
            int(draw([0.0, 0.25], 100, seed=s).edges_at_distance(2).sum())
            for s in range(400)
        ]
        # binomial(98, 1/4): mean 24.5, sd of the average about 0.21
        assert abs(np.mean(counts) - 24.5) < 1.0

    @pytest.mark.parametrize(
        "prefix", [(0.0, 0.25), (0.3, 0.25, 0.0, 0.6)], ids=["second", "mixed"]
    )
    def test_band_frequencies_are_calibrated(self, prefix):
        n, samples = 100, 10_000
        hits = np.zeros(len(prefix), dtype=np.int64)
        for s in range(samples):
            g = draw(prefix, n, seed=s)
            for l in range(1, len(prefix) + 1):
                hits[l - 1] += g.edges_at_distance(l).sum()
        for l, p in enumerate(prefix, start=1):
            if p == 0.0:
                assert hits[l - 1] == 0
                continue
            low, high = stats.binom.interval(0.999, (n - l) * samples, p)
            assert low <= hits[l - 1] <= high, (l, hits[l - 1], low, high)

    def test_one_bit_seed_changes_the_graph(self):
        differing = 0
        for k in range(100):
            seed = 1_000_003 * k + 17
            flipped = seed ^ (1 << (k % 48))
            a, b = draw([0.5, 0.2], 30, seed=seed), draw([0.5, 0.2], 30, seed=flipped)
            differing += a != b
        assert differing >= 99

    def test_sparse_band_mean(self):
        counts = [draw([0.01], 2001, seed=s).edge_count for s in range(200)]
        assert abs(np.mean(counts) - 20.0) < 2.0

    def test_only_supported_distances_appear(self):
        g = draw([0.0, 0.5, 0.0, 0.5], 40, seed=3)
        u, v = g.edges()
        assert set((v - u).tolist()) <= {2, 4}

    def test_tail_rule_is_used(self):
        g = draw([], 6, tail=TailRule.const(1.0))
        assert g.edge_count == 15


class TestGraphInvariants:
    @settings(max_examples=60)
    @given(
        st.lists(st.sampled_from([0.0, 0.1, 0.5, 1.0]), min_size=1, max_size=6),
        st.integers(1, 40),
        st.integers(0, 2**32),
    )
    def test_sampled_graphs_are_simple(self, prefix, n, seed):
        g = draw(prefix, n, seed=seed)
        for x in range(1, n + 1):
            row = g.neighbors(x)
            assert x not in row.tolist()
            assert np.all(np.diff(row) > 0)
            assert all(g.has_edge(int(y), x) for y in row)
        matrix = g.to_sparse()
        assert (matrix != matrix.T).nnz == 0
        assert not matrix.diagonal().any()


class TestDeriveSeed:
    def test_distinct_indices(self):
        assert len({derive_seed(5, i) for i in range(100)}) == 100

    def test_stable(self):
        assert derive_seed(5, 3) == derive_seed(5, 3)


class TestGraphQueries:
    def test_degree(self, edgeless5):
        assert degree(edgeless5, 1) == 0
        assert degree(draw([1.0], 4), 2) == 2
        assert all(degree(draw([1, 1, 1], 4), x) == 3 for x in range(1, 5))

    def test_degree_out_of_range(self, edgeless5):
        with pytest.raises(InvalidVertexError):
            degree(edgeless5, 6)

    def test_triangles(self, edgeless5, triangle5):
        assert enumerate_triangles(edgeless5) == []
        assert enumerate_triangles(triangle5) == [(1, 2, 3)]
        assert enumerate_triangles(draw([1.0, 1.0], 4)) == [(1, 2, 3), (2, 3, 4)]

    def test_triangle_counts(self, bowtie7):
        assert triangle_counts(bowtie7).tolist() == [1, 1, 2, 1, 1, 0, 0]

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32), st.integers(4, 25))
    def test_counts_match_enumeration(self, seed, n):
        g = draw([0.5, 0.5, 0.5], n, seed=seed)
        expected = np.zeros(n, dtype=int)
        for tri in enumerate_triangles(g):
            for x in tri:
                expected[x - 1] += 1
        assert triangle_counts(g).tolist() == expected.tolist()


class TestDump:
    def test_dump_format(self):
        assert draw([1.0], 3).dump() == "n 3\ne 1 2\ne 2 3\n"

    def test_parse_dump(self, bowtie7):
        assert Graph.parse_dump(bowtie7.dump()) == bowtie7

    def test_parse_dump_needs_header(self):
        with pytest.raises(InvalidParamsError):
            Graph.parse_dump("e 1 2\n")

    def test_bad_edge(self):
        with pytest.raises(InvalidVertexError):
            Graph.from_edges(3, [(1, 4)])

    def test_networkx_view(self, triangle5):
        nxg = triangle5.to_networkx()
        assert nxg.number_of_nodes() == 5
        assert nxg.number_of_edges() == 3
