"""Every registered checker agrees with naive evaluation of its formula."""

from itertools import combinations

import numpy as np
import pytest

from src.backend.checkers import ext_set, resolve_sentence
from src.backend.sampler import Graph
from tests.conftest import ORACLE_SAMPLES

CHEAP = [
    "isolated",
    "chain_triangles:2",
    "chain_triangles:4",
    "isolated_path:1",
    "isolated_path:2",
    "isolated_path:3",
    "edge_in_4cycle",
    "boundary_pair",
    "psi_prime:1",
    "pendant",
    "phi3_exists:1",
]
EXHAUSTIVE_ONLY = [
    "psi_prime:2",
    "phi3_exists:2",
    "phi3_exists:3",
    "phi3_exists:4",
]
# naive evaluation of the exhaustive-only sentences is slow beyond four vertices
COSTLY_SAMPLES = 15


def all_graphs(n):
    pairs = list(combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        edges = [pair for i, pair in enumerate(pairs) if mask >> i & 1]
        yield Graph.from_edges(n, edges)


def random_graphs(n, count, seed):
    rng = np.random.default_rng([seed, n])
    pairs = list(combinations(range(1, n + 1), 2))
    for _ in range(count):
        density = rng.uniform(0.15, 0.6)
        keep = rng.random(len(pairs)) < density
        yield Graph.from_edges(n, [pair for pair, k in zip(pairs, keep) if k])


class TestExhaustiveSmallGraphs:
    @pytest.mark.parametrize("sentence_id", CHEAP + EXHAUSTIVE_ONLY)
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_checker_matches_formula(self, sentence_id, n):
        sentence = resolve_sentence(sentence_id)
        for g in all_graphs(n):
            assert sentence.holds(g) == sentence.holds_naively(g), g.dump()

    def test_graph_count(self):
        assert sum(1 for _ in all_graphs(4)) == 64


class TestRandomGraphs:
    @pytest.mark.parametrize("sentence_id", CHEAP)
    @pytest.mark.parametrize("n", [5, 6, 7, 8, 9])
    def test_checker_matches_formula(self, sentence_id, n):
        sentence = resolve_sentence(sentence_id)
        for g in random_graphs(n, ORACLE_SAMPLES, seed=17):
            assert sentence.holds(g) == sentence.holds_naively(g), g.dump()

    @pytest.mark.slow
    @pytest.mark.parametrize("sentence_id", EXHAUSTIVE_ONLY)
    def test_costly_sentences_on_five_vertices(self, sentence_id):
        sentence = resolve_sentence(sentence_id)
        for g in random_graphs(5, COSTLY_SAMPLES, seed=29):
            assert sentence.holds(g) == sentence.holds_naively(g), g.dump()

    @pytest.mark.slow
    @pytest.mark.parametrize("sentence_id", CHEAP)
    @pytest.mark.parametrize("n", [5, 6, 7, 8, 9])
    def test_full_sample(self, sentence_id, n):
        sentence = resolve_sentence(sentence_id)
        for g in random_graphs(n, 1000, seed=23):
            assert sentence.holds(g) == sentence.holds_naively(g), g.dump()


class TestExtRecursion:
    def test_second_layer_of_boundary_vertices(self):
        for g in random_graphs(8, ORACLE_SAMPLES, seed=5):
            first, second = ext_set(g, 1), ext_set(g, 2)
            for x in first:
                around = set(g.neighbors(x).tolist())
                partners = {
                    y for y in around if around & set(g.neighbors(y).tolist())
                }
                assert (x in second) == bool(partners & first)
