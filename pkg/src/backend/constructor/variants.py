"""Oscillation builders: a sequence q in Gen_j(p) on which one sentence
alternates between near-certain truth and near-certain falsity.

Each builder checks its hypothesis on p, lays down a base prefix and then
alternates a positive and a negative extension step ``depth`` times.
Checkpoint j (1-based) is sized for confidence 1 - zeta(j).
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from typing import Any

import numpy as np

from ..bounds import (
    boundary_gap_cap,
    independence_failure_cap,
    isolated_expectation_cap,
    nice_boundary_cap,
    nice_positive_cap,
)
from ..checkers import resolve_sentence
from ..config import ConstructorConfig
from ..errors import (
    HypothesisViolationError,
    InvalidParamsError,
    VerificationFailedError,
    ZeroOneError,
)
from ..estimator import EstimatorHandle
from ..gen import Gen1Builder, gen_member
from ..models import (
    Checkpoint,
    Expectation,
    OscillationPlan,
    PendantWitness,
    ProbSeq,
    TailKind,
    Verdict,
)
from ..sampler import sample_from_probabilities
from ..seq import classify_conditions, log_survival, prob_at, probabilities
from ..seq import ustar, ustar_horizon, ustar_is_finite
from .boundary import BoundaryLayout, validate_boundary
from .nice import NiceSupport, validate_nice
from .proper import proper_base_builder, validate_proper
from .scan import is_fractional, is_one, next_one, scan_indices
from .steps import (
    Candidate,
    builder_from_plan,
    doubling,
    extend_neg,
    extend_pos,
    extend_with,
)

logger = logging.getLogger(__name__)

DEFAULT_GRID = (1_000, 10_000, 100_000, 1_000_000)
# partial sums of slowly divergent bases stay near 0.2 at desk scale
HYPOTHESIS_TAU = 0.25

Builder = Callable[..., OscillationPlan]


class _Hypotheses:
    """Collects hypothesis checks; failures raise unless the caller asserts them."""

    def __init__(self, asserted: bool):
        self.asserted = asserted
        self.assumptions: list[str] = []

    def require(self, ok: bool, condition: str, detail: str = "") -> None:
        if ok:
            return
        if not self.asserted:
            raise HypothesisViolationError(condition, detail)
        logger.warning(f"hypothesis asserted by caller, not verified: {condition}")
        self.assumptions.append(f"{condition} (asserted; {detail})")


def _check_round(plan: OscillationPlan, validator=None) -> None:
    member = gen_member(plan.built_q, plan.base_p, plan.gen_mode)
    if not member.accepted:
        raise ZeroOneError(
            f"{plan.variant}: built prefix left Gen_{plan.gen_mode} "
            f"at {member.violation}"
        )
    if validator is not None:
        cert = validator(plan.built_q)
        if not cert.accepted:
            raise ZeroOneError(f"{plan.variant}: structure lost: {cert}")
    last = plan.checkpoints[-1]
    logger.info(
        f"{plan.variant} checkpoint {len(plan.checkpoints)}: n={last.n} "
        f"{last.sentence_id} {last.expected.value} "
        f"(confidence {last.confidence:.3f}, {last.gate})"
    )


def _grid_exponents(p: ProbSeq, params: dict) -> tuple[Any, float, float]:
    """The condition report plus -f and log(sum)/log n at the last grid point."""
    grid = params.get("grid", DEFAULT_GRID)
    tau = float(params.get("tau", HYPOTHESIS_TAU))
    report = classify_conditions(p, grid, tau=tau)
    n_max, f_last = report.f_values[-1]
    total = report.sum_values[-1][1]
    g_last = math.log(total) / math.log(n_max) if total > 0 else -math.inf
    return report, round(-f_last, 6), round(g_last, 6)


def _masked_band(p: ProbSeq, start: int, stop: int) -> list[float]:
    """p_l for start <= l < stop with probability-one entries zeroed."""
    if stop <= start:
        return []
    values = probabilities(p, stop - 1)[start - 1 :]
    return np.where(values >= 1.0, 0.0, values).tolist()


def _finite_ustar(p: ProbSeq, hyp: _Hypotheses) -> list[int]:
    hyp.require(ustar_is_finite(p), "U*(p) is finite", f"tail {p.tail.kind.value}")
    return ustar(p, ustar_horizon(p)) if ustar_is_finite(p) else []


# -- gen1_triangles ---------------------------------------------------------


def _gen1_triangles(p, params, depth, estimator, config, hyp) -> OscillationPlan:
    report, neg_f, _ = _grid_exponents(p, params)
    hyp.require(
        report.verdict_star is Verdict.FAILS,
        "survival condition (*) must fail",
        f"(*) {report.verdict_star.value}",
    )
    eps = float(params.get("eps", neg_f))
    if eps <= 0:
        raise InvalidParamsError(f"eps must be positive, got {eps}")
    k = int(params.get("k", 2 * (math.floor(1 / eps) + 1)))

    builder, l_star = proper_base_builder(p, config.search_limit)
    plan = OscillationPlan(
        variant="gen1_triangles",
        base_p=p,
        built_q=builder.build(),
        gen_mode=1,
        l_star=l_star,
        r=builder.r,
        witness=builder.witness(),
        params={"k": k, "eps": eps},
        assumptions=hyp.assumptions,
    )
    for _ in range(depth):
        zeta = config.zeta(len(plan.checkpoints) + 1)
        plan = extend_pos(plan, k, zeta, estimator, config=config)
        _check_round(plan, validate_proper)
        zeta = config.zeta(len(plan.checkpoints) + 1)
        plan = extend_neg(plan, k, zeta, eps, estimator, config=config)
        _check_round(plan, validate_proper)
    return plan


# -- gen3_isolated ----------------------------------------------------------


def _isolation_chance(q: ProbSeq) -> float:
    """Lower bound on Pr[x isolated] once every edge of q is shorter than n_q."""
    if q.n_q < 2:
        return 1.0
    return math.exp(2 * log_survival(q, q.n_q - 1))


def _gen3_isolated(p, params, depth, estimator, config, hyp) -> OscillationPlan:
    _finite_ustar(p, hyp)
    report, _, g_last = _grid_exponents(p, params)
    hyp.require(
        report.verdict_double_star is Verdict.FAILS,
        "partial-sum condition (**) must fail",
        f"(**) {report.verdict_double_star.value}",
    )
    eps = float(params.get("eps", g_last))
    plan = OscillationPlan(
        variant="gen3_isolated",
        base_p=p,
        built_q=ProbSeq.finite(_masked_band(p, 1, 2)),
        gen_mode=3,
        params={"eps": eps},
        assumptions=hyp.assumptions,
    )
    sentence = "isolated"

    for _ in range(depth):
        q = plan.built_q

        def dense(n: int, q=q) -> Candidate:
            built = ProbSeq.finite(q.prefix + tuple(_masked_band(p, q.n_q, n)))
            return Candidate(n=n, q=built, cap=isolated_expectation_cap(built, n))

        zeta = config.zeta(len(plan.checkpoints) + 1)
        plan = extend_with(
            plan,
            doubling(2 * q.n_q, dense),
            Expectation.FAILS,
            zeta,
            sentence,
            estimator,
            config,
        )
        _check_round(plan)

        q = plan.built_q
        chance = _isolation_chance(q)

        def sparse(n: int, q=q, chance=chance) -> Candidate:
            return Candidate(
                n=n,
                q=q.padded(n - 1),
                cap=independence_failure_cap(chance, n, spacing=q.n_q - 1),
            )

        zeta = config.zeta(len(plan.checkpoints) + 1)
        plan = extend_with(
            plan,
            doubling(2 * q.n_q, sparse),
            Expectation.HOLDS,
            zeta,
            sentence,
            estimator,
            config,
        )
        _check_round(plan)
    return plan


# -- gen3_paths -------------------------------------------------------------


def _gen3_paths(p, params, depth, estimator, config, hyp) -> OscillationPlan:
    _finite_ustar(p, hyp)
    report, neg_f, _ = _grid_exponents(p, params)
    hyp.require(
        report.verdict_double_star is Verdict.HOLDS,
        "partial-sum condition (**) must hold",
        f"(**) {report.verdict_double_star.value}",
    )
    hyp.require(
        report.verdict_star is Verdict.FAILS,
        "survival condition (*) must fail",
        f"(*) {report.verdict_star.value}",
    )
    eps = float(params.get("eps", neg_f))
    if eps <= 0:
        raise InvalidParamsError(f"eps must be positive, got {eps}")
    k = int(params.get("k", math.ceil(6 / eps) + 1))
    first = scan_indices(p, is_fractional, 1, config.search_limit)
    if not first:
        raise HypothesisViolationError(
            "p has an entry strictly between 0 and 1",
            f"none within {config.search_limit}",
        )
    l_first = first[0]
    plan = OscillationPlan(
        variant="gen3_paths",
        base_p=p,
        built_q=ProbSeq.finite(_masked_band(p, 1, l_first + 1)),
        gen_mode=3,
        l_star=l_first,
        params={"k": k, "eps": eps},
        assumptions=hyp.assumptions,
    )
    sentence = f"isolated_path:{k}"
    span = (k - 1) * l_first

    for _ in range(depth):
        q = plan.built_q
        path_chance = math.exp(
            (k - 1) * math.log(prob_at(q, l_first)) + 2 * k * log_survival(q, q.n_q - 1)
        )

        def sparse(n: int, q=q, chance=path_chance) -> Candidate:
            spacing = span + q.n_q - 1
            cap = independence_failure_cap(chance, n, spacing=spacing, span=span)
            return Candidate(n=n, q=q.padded(n - 1), cap=cap)

        zeta = config.zeta(len(plan.checkpoints) + 1)
        plan = extend_with(
            plan,
            doubling(2 * q.n_q, sparse),
            Expectation.HOLDS,
            zeta,
            sentence,
            estimator,
            config,
        )
        _check_round(plan)

        q = plan.built_q

        def dense(n: int, q=q) -> Candidate:
            built = ProbSeq.finite(q.prefix + tuple(_masked_band(p, q.n_q, n)))
            return Candidate(n=n, q=built)

        zeta = config.zeta(len(plan.checkpoints) + 1)
        plan = extend_with(
            plan,
            doubling(2 * q.n_q, dense),
            Expectation.FAILS,
            zeta,
            sentence,
            estimator,
            config,
        )
        _check_round(plan)
    return plan


# -- gen3_4cycles -----------------------------------------------------------


def evaluate_deterministic(q: ProbSeq, n: int, sentence_id: str) -> bool:
    """Truth value on the unique graph of a 0/1 sequence."""
    probs = probabilities(q, n - 1)
    if ((probs > 0) & (probs < 1)).any():
        raise InvalidParamsError("deterministic evaluation needs a 0/1 sequence")
    graph = sample_from_probabilities(probs, n, seed=0)
    return resolve_sentence(sentence_id).holds(graph)


def _deterministic_checkpoint(
    plan: OscillationPlan, q: ProbSeq, n: int, expected: Expectation
) -> OscillationPlan:
    sentence = "edge_in_4cycle"
    value = evaluate_deterministic(q, n, sentence)
    if value != (expected is Expectation.HOLDS):
        raise VerificationFailedError(
            f"{sentence} is {value} at n={n}, expected {expected.value}"
        )
    checkpoint = Checkpoint(
        n=n,
        sentence_id=sentence,
        expected=expected,
        confidence=1.0,
        gate="deterministic",
    )
    return plan.with_checkpoint(q, checkpoint)


def _gen3_4cycles(p, params, depth, estimator, config, hyp) -> OscillationPlan:
    hyp.require(
        not ustar_is_finite(p), "U*(p) is infinite", f"tail {p.tail.kind.value}"
    )
    limit = config.search_limit
    first_one = next_one(p, 0, limit)
    if first_one is None:
        raise HypothesisViolationError(
            "p has probability-one entries", f"none within {limit}"
        )
    prefix = [0.0] * first_one
    prefix[-1] = 1.0
    plan = OscillationPlan(
        variant="gen3_4cycles",
        base_p=p,
        built_q=ProbSeq.finite(prefix),
        gen_mode=3,
        l_star=first_one,
        assumptions=hyp.assumptions,
    )
    n_prev = first_one + 1

    for _ in range(depth):
        # a lone long edge {1, L+1} cannot close a 4-cycle
        far = next_one(p, 4 * n_prev, limit)
        if far is None:
            raise HypothesisViolationError(
                "p has probability-one entries", f"none in ({4 * n_prev}, {limit}]"
            )
        q = plan.built_q.padded(far - 1)
        q = ProbSeq.finite(q.prefix + (1.0,))
        plan = _deterministic_checkpoint(plan, q, far + 1, Expectation.FAILS)
        _check_round(plan)

        # with n >= 2(L + L1) every edge closes a parallelogram
        n = 2 * (far + first_one)
        plan = _deterministic_checkpoint(
            plan, plan.built_q.padded(n - 1), n, Expectation.HOLDS
        )
        _check_round(plan)
        n_prev = n
    return plan


# -- gen1_boundary ----------------------------------------------------------


def _gen1_boundary(p, params, depth, estimator, config, hyp) -> OscillationPlan:
    hyp.require(
        not ustar_is_finite(p), "U*(p) is infinite", f"tail {p.tail.kind.value}"
    )
    variant_sentence = params.get("sentence", "boundary_pair")
    if variant_sentence not in ("boundary_pair", "psi_prime"):
        raise InvalidParamsError(
            f"sentence must be boundary_pair or psi_prime, got {variant_sentence}"
        )
    layout = BoundaryLayout(p, config.search_limit)
    l_star = layout.start()
    layout.builder.pad_to(4 * l_star)
    if variant_sentence == "psi_prime":
        sentence, offset = f"psi_prime:{l_star}", l_star
    else:
        sentence, offset = "boundary_pair", 1

    plan = OscillationPlan(
        variant="gen1_boundary",
        base_p=p,
        gen_mode=1,
        l_star=l_star,
        params={"sentence": variant_sentence},
        assumptions=hyp.assumptions,
    )

    def record(n: int, expected: Expectation, confidence: float) -> None:
        nonlocal plan
        builder = layout.builder
        builder.pad_to(n - 1)
        checkpoint = Checkpoint(
            n=n,
            sentence_id=sentence,
            expected=expected,
            confidence=confidence,
            gate="structural",
        )
        plan = plan.with_checkpoint(
            builder.build(), checkpoint, r=builder.r, witness=builder.witness()
        )
        _check_round(plan, validate_boundary)

    for _ in range(depth):
        one = layout.place_until_one()
        record(one + offset, Expectation.HOLDS, 1.0)
        # zero window (one, one + 2l*] separates the two boundaries
        n = one + 2 * l_star + 1
        gap = 0.0
        if variant_sentence == "boundary_pair":
            gap = boundary_gap_cap(layout.builder.build(), l_star).value
        record(n, Expectation.FAILS, 1.0 - gap)
    return plan


# -- gen1_nice --------------------------------------------------------------


def _eps_bound(p: ProbSeq, horizon: int) -> float:
    """Largest eps with eps < p_l < 1 - eps on every fractional entry."""
    values = [x for x in probabilities(p, horizon) if 0.0 < x < 1.0]
    if p.tail.kind is TailKind.CONST and 0.0 < p.tail.p < 1.0:
        values.append(p.tail.p)
    if not values:
        return 0.0
    return 0.99 * min(min(x, 1.0 - x) for x in values)


def _nice_place(builder: Gen1Builder, support: NiceSupport) -> float:
    """Place p_{r+1}; nonzero entries take the next admissible position."""
    value = prob_at(builder.p, builder.r + 1)
    if value == 0.0:
        builder.place_next(builder.length + 1)
    else:
        position = support.next_position(builder.length + 1)
        support.add(position)
        builder.place_next(position)
    return value


def _gen1_nice(p, params, depth, estimator, config, hyp) -> OscillationPlan:
    members = _finite_ustar(p, hyp)
    if len(members) != 1:
        raise HypothesisViolationError("|U*(p)| = 1", f"U* = {members}")
    horizon = max(len(p.prefix), 1)
    eps = float(params.get("eps", _eps_bound(p, horizon)))
    hyp.require(
        p.tail.kind is TailKind.CONST and eps > 0,
        "p is eps-bounded with divergent sum",
        f"tail {p.tail.kind.value}",
    )
    if not 0 < eps < 0.5:
        raise InvalidParamsError(f"eps must lie in (0, 0.5), got {eps}")
    steps = int(params.get("steps", config.step_bound))
    sentence = f"phi3_exists:{steps}"

    builder = Gen1Builder(p)
    support = NiceSupport()
    while builder.r < members[0]:
        _nice_place(builder, support)
    l_star = builder.points[-1]
    plan = OscillationPlan(
        variant="gen1_nice",
        base_p=p,
        built_q=builder.build(),
        gen_mode=1,
        l_star=l_star,
        r=builder.r,
        witness=builder.witness(),
        params={"steps": steps, "eps": eps},
        assumptions=hyp.assumptions,
    )
    start = int(params.get("start_entries", 8))

    for _ in range(depth):
        base = plan

        def spread(entries: int, base=base) -> Candidate:
            b = builder_from_plan(base)
            s = NiceSupport(base.built_q.nonzero_indices())
            for _ in range(entries):
                _nice_place(b, s)
            n = 3 * (s.top + 1)
            b.pad_to(n - 1)
            q = b.build()
            fractional = [x for x in q.prefix if 0.0 < x < 1.0]
            cap = None
            if len(fractional) >= 2:
                cap = nice_boundary_cap(sum(fractional), eps, len(fractional))
            return Candidate(
                n=n, q=q, cap=cap, update={"r": b.r, "witness": b.witness()}
            )

        zeta = config.zeta(len(plan.checkpoints) + 1)
        plan = extend_with(
            plan,
            (spread(start << i) for i in range(config.budget)),
            Expectation.HOLDS,
            zeta,
            sentence,
            estimator,
            config,
        )
        _check_round(plan, validate_nice)

        base = plan
        support_now = base.built_q.nonzero_indices()
        modulus = max(base.built_q.n_q, 3 * max(support_now) + 1)
        survival = log_survival(base.built_q, modulus - 1, mask=[l_star])
        far_one = math.exp(2 * survival)

        def multiples(entries: int, base=base) -> Candidate:
            b = builder_from_plan(base)
            multipliers = NiceSupport()
            mass = 0.0
            for _ in range(entries):
                value = prob_at(p, b.r + 1)
                if value == 0.0:
                    b.place_next(b.length + 1)
                    continue
                j = multipliers.next_position(b.length // modulus + 1)
                multipliers.add(j)
                b.place_next(j * modulus)
                mass += value
            q = b.build()
            return Candidate(
                n=q.n_q,
                q=q,
                cap=nice_positive_cap(far_one, mass, l_star),
                update={"r": b.r, "witness": b.witness()},
            )

        zeta = config.zeta(len(plan.checkpoints) + 1)
        plan = extend_with(
            plan,
            (multiples(start << i) for i in range(config.budget)),
            Expectation.FAILS,
            zeta,
            sentence,
            estimator,
            config,
        )
        _check_round(plan, validate_nice)
    return plan


VARIANTS: dict[str, Builder] = {
    "gen1_triangles": _gen1_triangles,
    "gen3_isolated": _gen3_isolated,
    "gen3_paths": _gen3_paths,
    "gen3_4cycles": _gen3_4cycles,
    "gen1_boundary": _gen1_boundary,
    "gen1_nice": _gen1_nice,
}


def build_oscillator(
    variant: str,
    p: ProbSeq,
    params: dict[str, Any] | None = None,
    depth: int = 2,
    estimator: EstimatorHandle | None = None,
    config: ConstructorConfig | None = None,
    assert_hypothesis: bool = False,
) -> OscillationPlan:
    """Build ``depth`` positive/negative rounds of the named construction."""
    if variant not in VARIANTS:
        raise InvalidParamsError(
            f"unknown variant '{variant}'; choose from {', '.join(VARIANTS)}"
        )
    if depth < 1:
        raise InvalidParamsError(f"depth must be >= 1, got {depth}")
    config = config or ConstructorConfig()
    hyp = _Hypotheses(assert_hypothesis)
    logger.info(f"building {variant} to depth {depth}")
    plan = VARIANTS[variant](
        p, dict(params or {}), depth, estimator, config, hyp
    )
    logger.info(
        f"{variant}: {len(plan.checkpoints)} checkpoints, "
        f"prefix length {len(plan.built_q.prefix)}"
    )
    return plan


def build_pendant_witness(p: ProbSeq, limit: int = 10_000_000) -> PendantWitness:
    """Keep one fractional entry l1 and one certain entry l2 of p, zero the rest.

    A vertex of the l2-boundary is pendant; its neighbor has degree >= 3
    exactly when an l1-edge touches it, so for n >= n0 the pendant sentence
    has chance at least p(1 - p) with p = p_{l1}. Every pendant candidate
    fails together when the 2l2 boundary neighbors miss both l1-edges, so the
    chance stays below 1 - (1 - p)^(4 l2).
    """
    fractional = scan_indices(p, is_fractional, 1, limit)
    ones = scan_indices(p, is_one, 1, limit)
    if not fractional or not ones:
        raise HypothesisViolationError(
            "p has an entry strictly between 0 and 1 and an entry equal to 1",
            f"found fractional {fractional}, ones {ones} within {limit}",
        )
    l1, l2 = fractional[0], ones[0]
    value = prob_at(p, l1)
    prefix = [0.0] * max(l1, l2)
    prefix[l1 - 1] = value
    prefix[l2 - 1] = 1.0
    return PendantWitness(
        q=ProbSeq.finite(prefix),
        l1=l1,
        l2=l2,
        n0=max(l1 + l2, 2 * l2) + 1,
        lower=value * (1.0 - value),
        upper=1.0 - (1.0 - value) ** (4 * l2),
    )
