"""Unit tests for the closed-form bounds."""

import math

import pytest
from scipy import stats

from src.backend.bounds import (
    boundary_gap_cap,
    chain_candidate_ceiling,
    chain_expected_ceiling,
    chain_failure_cap,
    chain_success_floor,
    degree_event_params,
    expected_ceiling_value,
    independence_failure_cap,
    isolated_expectation_cap,
    isolated_path_expectation_cap,
    nice_boundary_cap,
    nice_positive_cap,
    poisson_tail_bound,
)
from src.backend.errors import InvalidParamsError, InvalidSequenceError
from src.backend.models import ProbSeq, TailRule

fin = ProbSeq.finite


class TestChainSuccessFloor:
    def test_direct_product(self):
        bound = chain_success_floor(fin([0.5, 0.5]), 2, 1)
        assert bound.value == pytest.approx(0.5**2 * 0.5 * 0.25**6)
        assert bound.value == pytest.approx(3.0518e-05, rel=1e-4)

    def test_missing_step_is_vacuous(self):
        assert chain_success_floor(fin([0.0, 0.5]), 2, 1).value == 0.0

    def test_not_proper(self):
        with pytest.raises(InvalidSequenceError):
            chain_success_floor(fin([0.5, 0.5, 0.5]), 2, 1)

    def test_excluding_certain_entries(self):
        q = fin([0.5, 0.5, 0.0, 0.0, 0.0, 1.0])
        assert chain_success_floor(q, 2, 1).value == 0.0
        assert chain_success_floor(q, 2, 1, exclude_ones=True).value > 0.0

    def test_failure_cap_decreases(self):
        q = fin([0.5, 0.5])
        caps = [chain_failure_cap(q, 2, 1, n).value for n in (1_000, 10_000, 100_000)]
        assert caps[0] > caps[1] > caps[2]
        assert chain_failure_cap(q, 2, 1, 10).value == 1.0


class TestChainCeilings:
    def test_expected_ceiling_formula(self):
        assert expected_ceiling_value(1.0, 4, 1.0, 10_000) == pytest.approx(4e-4)

    def test_hypothesis_boundary(self):
        with pytest.raises(InvalidParamsError):
            expected_ceiling_value(1.0, 2, 1.0, 100)
        with pytest.raises(InvalidParamsError):
            chain_expected_ceiling(
                fin([0.5, 0.5]), ProbSeq(tail=TailRule.harmonic(1)), 2, 1.0, 100
            )

    def test_ceiling_decreases_in_n(self):
        values = [expected_ceiling_value(0.3, 6, 0.5, n) for n in (10, 100, 1000)]
        assert values[0] > values[1] > values[2]

    def test_ceiling_on_proper_prefix(self):
        p = ProbSeq(tail=TailRule.harmonic(1))
        bound = chain_expected_ceiling(fin([0.5, 0.5]), p, 4, 1.0, 10_000)
        assert bound.inputs["p_star"] == pytest.approx(4.0)
        assert bound.value == pytest.approx(1.6e-3)

    def test_candidate_ceiling(self):
        bound = chain_candidate_ceiling(fin([0.5, 0.5]), 2, 1, 100)
        assert bound.value == pytest.approx(4 * 100 * 0.125)


class TestPoisson:
    def test_direct_value(self):
        assert poisson_tail_bound(1.0, 2).value == pytest.approx(math.e / 4)
        assert poisson_tail_bound(1.0, 2).value == pytest.approx(0.67957, abs=1e-5)

    def test_integer_mean(self):
        assert poisson_tail_bound(2.0, 2).value == pytest.approx(1.0)

    @pytest.mark.parametrize("lam", [0.5, 1.0, 2.0, 5.0, 10.0])
    def test_dominates_exact_tail(self, lam):
        for i in range(math.ceil(lam) + 1, 51):
            exact = stats.poisson.sf(i - 1, lam)
            assert poisson_tail_bound(lam, i).value >= exact

    def test_exact_tail_at_one(self):
        assert stats.poisson.sf(1, 1.0) == pytest.approx(1 - 2 / math.e)

    def test_bad_rate(self):
        with pytest.raises(InvalidParamsError):
            poisson_tail_bound(0.0, 1)


class TestDegreeEvent:
    def test_threshold(self):
        threshold, _ = degree_event_params(10_000, 1 / 6)
        assert threshold == 173

    def test_cap_small_at_scale(self):
        for n in (100_000, 1_000_000):
            assert degree_event_params(n, 1 / 6)[1].value < 1.0

    def test_threshold_monotone_in_delta(self):
        thresholds = [degree_event_params(1000, d)[0] for d in (0.05, 0.1, 0.2)]
        assert thresholds == sorted(thresholds)

    def test_bad_inputs(self):
        with pytest.raises(InvalidParamsError):
            degree_event_params(1, 0.1)


class TestNiceBounds:
    def test_boundary_cap(self):
        assert nice_boundary_cap(10, 0.5, 100).value == pytest.approx(9.7635, abs=1e-4)

    def test_boundary_cap_two_entries(self):
        assert nice_boundary_cap(3.5, 0.2, 2).value == pytest.approx(3.5)

    def test_boundary_cap_near_one(self):
        assert nice_boundary_cap(10, 0.999999, 400).value < 1e-6

    def test_boundary_cap_needs_two(self):
        with pytest.raises(InvalidParamsError):
            nice_boundary_cap(1.0, 0.5, 1)

    def test_positive_cap(self):
        assert nice_positive_cap(0.5, 10.0, 3).value == pytest.approx(1.2)
        assert nice_positive_cap(0.0, 10.0, 3).value == math.inf


class TestIsolationBounds:
    def test_expectation_cap(self):
        bound = isolated_expectation_cap(fin([0.5, 0.5]), 11)
        assert bound.value == pytest.approx(11 * 0.25)

    def test_independence_cap(self):
        bound = independence_failure_cap(0.5, 10, spacing=1)
        assert bound.inputs["anchors"] == 5
        assert bound.value == pytest.approx(0.5**5)

    def test_independence_cap_with_window(self):
        bound = independence_failure_cap(0.5, 10, spacing=3, span=2)
        assert bound.inputs["anchors"] == 2

    def test_independence_cap_without_chance(self):
        assert independence_failure_cap(0.0, 100, spacing=1).value == 1.0

    def test_path_expectation_cap(self):
        bound = isolated_path_expectation_cap(1000, 7, 1.0)
        assert bound.value == pytest.approx(8**7 * 1000 ** (1 - 7 / 6))


class TestBoundaryGap:
    def test_gap(self):
        bound = boundary_gap_cap(fin([0.2, 0.0, 1.0]), 3)
        assert bound.value == pytest.approx(1 - 0.8**6)

    def test_no_short_edges(self):
        assert boundary_gap_cap(fin([0.0, 0.0, 1.0]), 3).value == 0.0

    def test_every_value_nonnegative(self):
        for l_star in range(1, 6):
            assert boundary_gap_cap(fin([0.9] * 6), l_star).value >= 0.0
