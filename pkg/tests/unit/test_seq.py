"""Unit tests for probability sequences and the asymptotic conditions."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.backend.errors import InvalidGridError, InvalidIndexError
from src.backend.models import LawStatus, ProbSeq, TailRule, Verdict
from src.backend.seq import (
    classify_conditions,
    f_value,
    hereditary_verdicts,
    log_survival,
    prob_at,
    probabilities,
    ustar,
    ustar_is_finite,
)


def tail(rule):
    return ProbSeq(tail=rule)


class TestProbAt:
    def test_prefix_lookup(self):
        assert prob_at(ProbSeq.finite([0.5]), 1) == 0.5

    def test_harmonic_first_entry(self):
        assert prob_at(tail(TailRule.harmonic(1)), 1) == pytest.approx(0.5)

    def test_ones_at(self):
        assert prob_at(tail(TailRule.ones_at(period=3, offset=1)), 4) == 1.0
        assert prob_at(tail(TailRule.ones_at(period=3, offset=1)), 5) == 0.0

    def test_beyond_finite_prefix_is_zero(self):
        assert prob_at(ProbSeq.finite([0.5]), 7) == 0.0

    def test_index_zero_rejected(self):
        with pytest.raises(InvalidIndexError):
            prob_at(ProbSeq.finite([0.5]), 0)

    def test_power_law_is_clipped(self):
        seq = tail(TailRule.power_law(4, 1))
        assert prob_at(seq, 2) == 1.0
        assert prob_at(seq, 8) == pytest.approx(0.5)

    @given(st.integers(min_value=1, max_value=500))
    def test_vectorized_matches_scalar(self, l):
        seq = ProbSeq(prefix=(0.3, 0.0, 1.0), tail=TailRule.harmonic(0.7))
        assert probabilities(seq, l)[-1] == pytest.approx(prob_at(seq, l), abs=1e-15)


class TestLogSurvival:
    def test_constant_half(self):
        assert log_survival(tail(TailRule.const(0.5)), 4) == pytest.approx(
            4 * math.log(0.5)
        )

    def test_harmonic_telescopes(self):
        assert log_survival(tail(TailRule.harmonic(1)), 9) == pytest.approx(
            math.log(0.1), abs=1e-12
        )

    def test_probability_one_gives_minus_infinity(self):
        assert log_survival(tail(TailRule.ones_at(2, 0)), 2) == -math.inf

    def test_mask_drops_the_certain_entry(self):
        seq = ProbSeq.finite([0.5, 1.0])
        assert log_survival(seq, 2, mask=[2]) == pytest.approx(math.log(0.5))

    def test_n_zero_rejected(self):
        with pytest.raises(InvalidIndexError):
            log_survival(ProbSeq(), 0)


class TestFValue:
    def test_constant_half_is_exactly_minus_two(self):
        assert f_value(tail(TailRule.const(0.5)), 4) == pytest.approx(-2.0, abs=1e-12)

    def test_harmonic(self):
        direct = sum(math.log1p(-(1 - l / (l + 1))) for l in range(1, 10))
        assert f_value(tail(TailRule.harmonic(1)), 9) == pytest.approx(
            direct / math.log(9), abs=1e-12
        )
        value = f_value(tail(TailRule.harmonic(1)), 9)
        assert value == pytest.approx(-1.04795, abs=1e-5)

    def test_all_zero(self):
        assert f_value(ProbSeq(), 50) == 0.0

    def test_n_one_rejected(self):
        with pytest.raises(InvalidIndexError):
            f_value(ProbSeq(), 1)


class TestClassifyConditions:
    grid = [10, 100, 1000, 10000]

    def test_harmonic_fails_survival_condition(self):
        report = classify_conditions(tail(TailRule.harmonic(1)), self.grid, tau=0.1)
        assert report.verdict_star is Verdict.FAILS
        assert report.f_values[-1][1] == pytest.approx(-1.0, abs=0.02)

    def test_zero_holds_survival_condition(self):
        report = classify_conditions(tail(TailRule.const(0)), self.grid, tau=0.1)
        assert report.verdict_star is Verdict.HOLDS

    def test_square_root_partial_sums_fail(self):
        report = classify_conditions(tail(TailRule.power_law(1, 0.5)), self.grid)
        assert report.verdict_double_star is Verdict.FAILS

    def test_empty_grid(self):
        with pytest.raises(InvalidGridError):
            classify_conditions(ProbSeq(), [])

    def test_unsorted_grid(self):
        with pytest.raises(InvalidGridError):
            classify_conditions(ProbSeq(), [100, 10])


class TestUstar:
    def test_finite_prefix(self):
        seq = ProbSeq.finite([0.5, 1.0, 0.0, 1.0])
        assert ustar(seq, 10) == [2, 4]
        assert ustar_is_finite(seq)

    def test_periodic_ones_are_infinite(self):
        assert not ustar_is_finite(tail(TailRule.ones_at(5, 0)))

    def test_constant_one_is_infinite(self):
        assert not ustar_is_finite(tail(TailRule.const(1.0)))


class TestHereditaryVerdicts:
    def test_infinite_ustar_fails_everywhere(self):
        report = hereditary_verdicts(tail(TailRule.ones_at(5, 0)), [10, 100])
        assert set(report.laws.values()) == {LawStatus.FAILS}

    def test_finite_ustar_with_fractional_entry(self):
        report = hereditary_verdicts(ProbSeq.finite([0.5, 1.0, 1.0]), [10, 100])
        assert report.laws[1] is LawStatus.FAILS
        assert report.laws[2] is LawStatus.FAILS
        assert report.laws[3] is LawStatus.FAILS

    def test_zero_one_sequence_holds(self):
        report = hereditary_verdicts(ProbSeq.finite([1.0, 0.0, 1.0]), [10, 100])
        assert report.laws[1] is LawStatus.HOLDS
        assert report.laws[3] is LawStatus.HOLDS

    def test_single_one_leaves_first_law_open(self):
        report = hereditary_verdicts(ProbSeq.finite([0.0, 1.0]), [10, 100])
        assert report.laws[1] is LawStatus.OPEN
        assert report.laws[2] is LawStatus.HOLDS

    def test_empty_ustar_uses_grid_verdicts(self):
        report = hereditary_verdicts(tail(TailRule.harmonic(1)), [10, 100, 1000, 10000])
        assert report.laws[1] is LawStatus.FAILS_EMPIRICALLY
