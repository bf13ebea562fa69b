"""Unit tests for the structural validators and the extension steps."""

import pytest

from src.backend.constructor import (
    NiceSupport,
    SumFreeSupport,
    extend_neg,
    extend_pos,
    make_proper_base,
    proper_base_builder,
    validate_boundary,
    validate_nice,
    validate_proper,
)
from src.backend.errors import (
    BudgetExceededError,
    InvalidParamsError,
    InvalidSequenceError,
    NotEnoughSupportError,
)
from src.backend.gen import gen_member
from src.backend.models import Expectation, OscillationPlan, ProbSeq, TailRule
from src.backend.seq import prob_at


def sparse(length, **entries):
    """Finite prefix with the given 1-based entries set, e.g. sparse(9, at2=.5)."""
    values = [0.0] * length
    for key, value in entries.items():
        values[int(key[2:]) - 1] = value
    return ProbSeq.finite(values)


HARMONIC = ProbSeq(tail=TailRule.harmonic(1.0))


@pytest.fixture
def proper_plan():
    builder, l_star = proper_base_builder(HARMONIC)
    return OscillationPlan(
        variant="gen1_triangles",
        base_p=HARMONIC,
        built_q=builder.build(),
        gen_mode=1,
        l_star=l_star,
        r=builder.r,
        witness=builder.witness(),
    )


class TestValidateProper:
    def test_accepts_residue_one(self):
        cert = validate_proper(sparse(9, at2=0.5, at4=0.5, at9=0.3))
        assert cert.accepted
        assert (cert.l_star, cert.l_double_star) == (2, 8)

    def test_rejects_other_residue(self):
        cert = validate_proper(sparse(10, at2=0.5, at4=0.5, at10=0.3))
        assert not cert.accepted
        assert cert.violation == (10,)

    def test_rejects_second_index(self):
        assert not validate_proper(sparse(5, at2=0.5, at5=0.5)).accepted

    def test_needs_two_entries(self):
        with pytest.raises(NotEnoughSupportError):
            validate_proper(sparse(3, at2=0.5))

    def test_needs_finite_sequence(self):
        with pytest.raises(InvalidSequenceError):
            validate_proper(HARMONIC)


class TestMakeProperBase:
    def test_far_second_entry(self):
        q, r = make_proper_base(sparse(3, at1=0.5, at3=0.4), limit=100)
        assert q.prefix == (0.0, 0.5, 0.0, 0.4)
        assert r == 3

    def test_near_second_entry(self):
        q, r = make_proper_base(sparse(3, at2=0.5, at3=0.4), limit=100)
        assert q.prefix == (0.0, 0.5, 0.0, 0.4)
        assert r == 3

    def test_result_is_proper_and_a_copy(self):
        p = sparse(7, at3=0.2, at7=0.6)
        q, _ = make_proper_base(p, limit=100)
        assert validate_proper(q).accepted
        assert gen_member(q, p, 1).accepted

    def test_single_entry(self):
        with pytest.raises(NotEnoughSupportError):
            make_proper_base(sparse(3, at2=0.5), limit=100)

    def test_harmonic_base(self):
        builder, l_star = proper_base_builder(HARMONIC)
        assert l_star == 1
        assert builder.build().prefix == (prob_at(HARMONIC, 1), prob_at(HARMONIC, 2))


class TestValidateNice:
    def test_single_one(self):
        cert = validate_nice(ProbSeq.finite([1.0]))
        assert cert.accepted
        assert cert.l_star == 1

    def test_two_ones(self):
        cert = validate_nice(sparse(4, at1=1.0, at4=1.0))
        assert not cert.accepted
        assert cert.clause == "a"

    def test_sum_of_two(self):
        cert = validate_nice(sparse(4, at1=1.0, at3=0.3, at4=0.3))
        assert cert.clause == "b"
        assert cert.violation == (1, 3, 4)

    def test_sum_of_three(self):
        assert validate_nice(sparse(7, at1=1.0, at5=0.3, at7=0.3)).clause == "c"

    def test_equal_pair_sums(self):
        cert = validate_nice(sparse(14, at1=1.0, at5=0.3, at8=0.3, at12=0.3))
        assert cert.clause == "d"
        assert cert.violation == (1, 12, 5, 8)

    def test_pair_sums_beyond_prefix_are_ignored(self):
        assert validate_nice(sparse(12, at1=1.0, at5=0.3, at8=0.3, at12=0.3)).accepted


class TestNiceSupport:
    def test_forbidden_after_one(self):
        support = NiceSupport([1])
        assert support.next_position(2) == 4

    def test_grown_support_validates(self):
        support = NiceSupport([1])
        for _ in range(10):
            support.add(support.next_position(support.top + 1))
        values = [0.0] * support.top
        values[0] = 1.0
        for l in support.indices[1:]:
            values[l - 1] = 0.3
        assert validate_nice(ProbSeq.finite(values)).accepted


class TestValidateBoundary:
    def test_accepts(self):
        cert = validate_boundary(sparse(10, at5=1.0, at10=1.0))
        assert cert.accepted
        assert (cert.l_star, cert.l_double_star) == (5, 10)

    def test_even_l_star(self):
        assert "even" in validate_boundary(sparse(8, at4=1.0, at8=1.0)).reason

    def test_second_one_misplaced(self):
        assert not validate_boundary(sparse(11, at5=1.0, at11=1.0)).accepted

    def test_extra_sum(self):
        cert = validate_boundary(sparse(15, at5=1.0, at10=1.0, at15=0.3))
        assert cert.violation == (5, 10, 15)

    def test_single_one(self):
        assert not validate_boundary(sparse(5, at5=1.0)).accepted


class TestSumFreeSupport:
    def test_skips_sums(self):
        support = SumFreeSupport([1, 2])
        assert support.next_position(3) == 5


class TestExtendPos:
    def test_zeta_out_of_range(self, proper_plan, always_true):
        with pytest.raises(InvalidParamsError):
            extend_pos(proper_plan, 4, 1.0, always_true)

    def test_odd_k(self, proper_plan, always_true):
        with pytest.raises(InvalidParamsError):
            extend_pos(proper_plan, 3, 0.5, always_true)

    def test_pilot_accepts_first_candidate(self, proper_plan, always_true):
        plan = extend_pos(proper_plan, 4, 0.5, always_true)
        checkpoint = plan.checkpoints[-1]
        assert checkpoint.n == 24
        assert checkpoint.expected is Expectation.HOLDS
        assert checkpoint.sentence_id == "chain_triangles:4:1"
        assert checkpoint.gate == "monte-carlo"
        assert plan.built_q.prefix[:2] == proper_plan.built_q.prefix
        assert set(plan.built_q.prefix[2:]) == {0.0}
        assert validate_proper(plan.built_q).accepted

    def test_input_plan_unchanged(self, proper_plan, always_true):
        extend_pos(proper_plan, 4, 0.5, always_true)
        assert proper_plan.checkpoints == []

    def test_budget_exhausted(self, proper_plan, undecided):
        with pytest.raises(BudgetExceededError):
            extend_pos(proper_plan, 4, 0.25, undecided, budget=2)
        assert len(undecided.calls) == 2

    def test_needs_proper_prefix(self, always_true):
        plan = OscillationPlan(
            variant="gen1_triangles",
            base_p=HARMONIC,
            built_q=sparse(5, at2=0.5, at5=0.5),
            l_star=2,
        )
        with pytest.raises(InvalidSequenceError):
            extend_pos(plan, 4, 0.5, always_true)


class TestExtendNeg:
    def test_needs_k_eps_above_two(self, proper_plan, always_false):
        with pytest.raises(InvalidParamsError):
            extend_neg(proper_plan, 2, 0.5, 1.0, always_false)

    def test_pilot_accepts(self, proper_plan, always_false):
        plan = extend_neg(proper_plan, 4, 0.2, 1.0, always_false)
        checkpoint = plan.checkpoints[-1]
        assert checkpoint.n == 9
        assert checkpoint.expected is Expectation.FAILS
        assert plan.r == 3
        assert plan.built_q.nonzero_indices() == [1, 2, 6]
        assert validate_proper(plan.built_q).accepted
        assert gen_member(plan.built_q, HARMONIC, 1).accepted

    def test_ceiling_certifies_without_sampling(self, proper_plan):
        plan = extend_neg(proper_plan, 4, 0.2, 1.0, None)
        checkpoint = plan.checkpoints[-1]
        assert checkpoint.n == 18
        assert checkpoint.gate == "analytic"
        assert plan.built_q.nonzero_indices() == [1, 2, 6, 11, 16]

    def test_witness_extends(self, proper_plan, always_false):
        plan = extend_neg(proper_plan, 4, 0.2, 1.0, always_false)
        before = proper_plan.witness.image_points[:-1]
        assert plan.witness.image_points[: len(before)] == before

    def test_budget_exhausted(self, proper_plan, undecided):
        with pytest.raises(BudgetExceededError):
            extend_neg(proper_plan, 4, 0.2, 1.0, undecided, budget=1)
