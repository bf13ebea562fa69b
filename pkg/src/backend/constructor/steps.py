"""One extension step of an oscillation: pick n by doubling, gate, record."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from itertools import islice
from typing import Any

from ..bounds import chain_candidate_ceiling, chain_failure_cap
from ..config import ConstructorConfig
from ..errors import BudgetExceededError, InvalidParamsError, InvalidSequenceError
from ..estimator import EstimatorHandle
from ..gen import Gen1Builder
from ..models import BoundValue, Checkpoint, Expectation, OscillationPlan, ProbSeq
from .proper import proper_modulus, validate_proper

logger = logging.getLogger(__name__)


@dataclass
class Candidate:
    """A tentative extension: the prefix covering [1, n) and an optional cap.

    ``cap`` bounds the probability of the unwanted outcome at n.
    """

    n: int
    q: ProbSeq
    cap: BoundValue | None = None
    update: dict[str, Any] | None = None


def check_zeta(zeta: float) -> None:
    if not 0 < zeta < 1:
        raise InvalidParamsError(f"zeta must lie in (0, 1), got {zeta}")


def doubling(start: int, build: Callable[[int], Candidate]) -> Iterator[Candidate]:
    n = start
    while True:
        yield build(n)
        n *= 2


def gate(
    candidate: Candidate,
    expected: Expectation,
    zeta: float,
    sentence_id: str,
    estimator: EstimatorHandle | None,
    trials: int,
) -> str | None:
    """Name of the gate that accepts ``candidate``, or None."""
    if candidate.cap is not None and candidate.cap.value <= zeta:
        logger.debug(
            f"n={candidate.n}: {candidate.cap.formula_id} "
            f"{candidate.cap.value:.3g} <= {zeta}"
        )
        return "analytic"
    if estimator is None:
        return None
    est = estimator.estimate(candidate.q, candidate.n, sentence_id, trials)
    if expected is Expectation.HOLDS:
        accepted = est.ci_low >= 1 - zeta
    else:
        accepted = est.ci_high <= zeta
    logger.debug(
        f"n={candidate.n}: pilot {est.point:.3f} "
        f"[{est.ci_low:.3f}, {est.ci_high:.3f}] "
        f"{'accepted' if accepted else 'rejected'} for {expected.value}"
    )
    return "monte-carlo" if accepted else None


def extend_with(
    plan: OscillationPlan,
    candidates: Iterator[Candidate],
    expected: Expectation,
    zeta: float,
    sentence_id: str,
    estimator: EstimatorHandle | None,
    config: ConstructorConfig,
    budget: int | None = None,
) -> OscillationPlan:
    """Accept the first candidate a gate passes; the input plan is never changed."""
    check_zeta(zeta)
    budget = config.budget if budget is None else budget
    if budget < 1:
        raise InvalidParamsError(f"budget must be >= 1, got {budget}")
    last = None
    for attempt, candidate in enumerate(islice(candidates, budget), start=1):
        last = candidate.n
        chosen = gate(
            candidate, expected, zeta, sentence_id, estimator, config.pilot_trials
        )
        if chosen is None:
            if attempt == budget - 1:
                logger.warning(f"{sentence_id}: one doubling left after n={last}")
            continue
        checkpoint = Checkpoint(
            n=candidate.n,
            sentence_id=sentence_id,
            expected=expected,
            confidence=1 - zeta,
            gate=chosen,
        )
        return plan.with_checkpoint(candidate.q, checkpoint, **(candidate.update or {}))
    raise BudgetExceededError(
        f"{sentence_id} ({expected.value}, zeta={zeta}) not certified within "
        f"{budget} doublings, last n={last}"
    )


def builder_from_plan(plan: OscillationPlan) -> Gen1Builder:
    points = plan.witness.image_points[:-1] if plan.witness is not None else ()
    return Gen1Builder(plan.base_p, start=plan.built_q, r=plan.r, points=points)


def _check_k(k: int) -> None:
    if k < 2 or k % 2:
        raise InvalidParamsError(f"k must be even and >= 2, got {k}")


def _proper_l_star(plan: OscillationPlan) -> int:
    cert = validate_proper(plan.built_q)
    if not cert.accepted or cert.l_star != plan.l_star:
        raise InvalidSequenceError(
            f"built prefix is not proper for l*={plan.l_star}: {cert.reason}"
        )
    return cert.l_star


def extend_pos(
    plan: OscillationPlan,
    k: int,
    zeta: float,
    estimator: EstimatorHandle | None,
    budget: int | None = None,
    config: ConstructorConfig | None = None,
) -> OscillationPlan:
    """Append zeros until a chain of k/2 triangles appears with chance >= 1 - zeta."""
    check_zeta(zeta)
    _check_k(k)
    config = config or ConstructorConfig()
    l_star = _proper_l_star(plan)
    q = plan.built_q
    exclude_ones = any(x >= 1.0 for x in q.prefix)

    def build(n: int) -> Candidate:
        builder = builder_from_plan(plan)
        builder.pad_to(n - 1)
        return Candidate(
            n=n,
            q=builder.build(),
            cap=chain_failure_cap(q, k, l_star, n, exclude_ones),
            update={"witness": builder.witness()},
        )

    start = 6 * max(q.n_q, k * l_star)
    return extend_with(
        plan,
        doubling(start, build),
        Expectation.HOLDS,
        zeta,
        f"chain_triangles:{k}:{l_star}",
        estimator,
        config,
        budget,
    )


def extend_neg(
    plan: OscillationPlan,
    k: int,
    zeta: float,
    eps: float,
    estimator: EstimatorHandle | None,
    budget: int | None = None,
    config: ConstructorConfig | None = None,
) -> OscillationPlan:
    """Copy p at indices 1 mod l** until chains become unlikely (chance <= zeta)."""
    check_zeta(zeta)
    _check_k(k)
    if k * eps <= 2:
        raise InvalidParamsError(f"need k*eps > 2, got k={k}, eps={eps}")
    config = config or ConstructorConfig()
    l_star = _proper_l_star(plan)
    modulus = proper_modulus(l_star)
    n_q = plan.built_q.n_q
    first = n_q + (1 - n_q) % modulus

    def build(n: int) -> Candidate:
        builder = builder_from_plan(plan)
        for position in range(first, n, modulus):
            builder.place_next(position)
        builder.pad_to(n - 1)
        q = builder.build()
        return Candidate(
            n=n,
            q=q,
            cap=chain_candidate_ceiling(q, k, l_star, n),
            update={"r": builder.r, "witness": builder.witness()},
        )

    start = max(2 * n_q, n_q + modulus + 1)
    return extend_with(
        plan,
        doubling(start, build),
        Expectation.FAILS,
        zeta,
        f"chain_triangles:{k}:{l_star}",
        estimator,
        config,
        budget,
    )
