"""Shared fixtures: small hand-built graphs and a scripted estimator."""

import os
from dataclasses import dataclass, field

import pytest

from src.backend.models import Estimate, ProbSeq
from src.backend.sampler import Graph

# reduced by default; the slow suite and ZOL_ORACLE_SAMPLES restore 1000
ORACLE_SAMPLES = int(os.getenv("ZOL_ORACLE_SAMPLES", "60"))


def graph(n, *edges):
    return Graph.from_edges(n, edges)


@pytest.fixture
def edgeless5():
    return Graph.empty(5)


@pytest.fixture
def path3():
    return graph(3, (1, 2), (2, 3))


@pytest.fixture
def triangle5():
    return graph(5, (1, 2), (2, 3), (1, 3))


@pytest.fixture
def complete3():
    return graph(3, (1, 2), (2, 3), (1, 3))


@pytest.fixture
def two_triangles8():
    return graph(8, (1, 2), (2, 3), (1, 3), (5, 6), (6, 7), (5, 7))


@pytest.fixture
def bowtie7():
    """Triangles {1,2,3} and {3,4,5} sharing vertex 3."""
    return graph(7, (1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5))


@dataclass
class ScriptedEstimator:
    """Estimator handle returning a fixed probability per (sentence, n) rule."""

    chance: callable
    calls: list = field(default_factory=list)

    def estimate(self, seq: ProbSeq, n: int, sentence_id: str, trials: int) -> Estimate:
        self.calls.append((n, sentence_id, trials))
        point = float(self.chance(seq, n, sentence_id))
        successes = round(point * trials)
        return Estimate(
            successes=successes,
            trials=trials,
            point=successes / trials,
            ci_low=point,
            ci_high=point,
            alpha=0.05,
        )


@pytest.fixture
def always_true():
    return ScriptedEstimator(lambda seq, n, sid: 1.0)


@pytest.fixture
def always_false():
    return ScriptedEstimator(lambda seq, n, sid: 0.0)


@pytest.fixture
def undecided():
    return ScriptedEstimator(lambda seq, n, sid: 0.5)
