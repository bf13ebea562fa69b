"""Monte Carlo estimation of Pr[M^n_q |= psi] and plan verification."""

from __future__ import annotations

import csv
import logging
import math
import time
from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol

from scipy import stats

from .checkers import resolve_sentence
from .config import EstimatorConfig
from .errors import InvalidParamsError
from .models import (
    CheckpointResult,
    Estimate,
    Expectation,
    OscillationPlan,
    ProbSeq,
    VerificationReport,
)
from .sampler import derive_seed, sample_from_probabilities
from .seq import probabilities

logger = logging.getLogger(__name__)

CSV_FIELDS = [
    "variant",
    "n",
    "sentence",
    "trials",
    "point",
    "ci_low",
    "ci_high",
    "expected",
    "pass",
]


def wilson_interval(successes: int, trials: int, alpha: float) -> tuple[float, float]:
    """Two-sided Wilson score interval at level alpha."""
    if trials < 1:
        raise InvalidParamsError(f"trials must be >= 1, got {trials}")
    if not 0 < alpha < 1:
        raise InvalidParamsError(f"alpha must lie in (0, 1), got {alpha}")
    z = float(stats.norm.ppf(1 - alpha / 2))
    phat = successes / trials
    z2 = z * z
    denom = 1 + z2 / trials
    center = phat + z2 / (2 * trials)
    half = z * math.sqrt(phat * (1 - phat) / trials + z2 / (4 * trials * trials))
    low = max(0.0, (center - half) / denom)
    high = min(1.0, (center + half) / denom)
    return min(low, phat), max(high, phat)


def _count_block(
    seq_json: str, n: int, sentence_id: str, seed: int, start: int, stop: int
) -> int:
    """Successes over trial indices [start, stop); runs in worker processes too."""
    seq = ProbSeq.from_json(seq_json)
    sentence = resolve_sentence(sentence_id)
    probs = probabilities(seq, n - 1)
    hits = 0
    for t in range(start, stop):
        g = sample_from_probabilities(probs, n, derive_seed(seed, t))
        hits += sentence.holds(g)
    return hits


def _blocks(trials: int, workers: int) -> list[tuple[int, int]]:
    size = math.ceil(trials / workers)
    return [(s, min(s + size, trials)) for s in range(0, trials, size)]


def estimate_prob(
    seq: ProbSeq,
    n: int,
    sentence_id: str,
    trials: int,
    seed: int = 0,
    alpha: float = 0.05,
    workers: int = 1,
) -> Estimate:
    """Estimate Pr[M^n_seq |= sentence] from ``trials`` independent samples.

    Trial t uses the seed derived from (seed, t), so the result does not
    depend on ``workers``.
    """
    if trials < 1:
        raise InvalidParamsError(f"trials must be >= 1, got {trials}")
    if n < 1:
        raise InvalidParamsError(f"n must be >= 1, got {n}")
    resolve_sentence(sentence_id)

    seq_json = seq.to_json()
    if workers > 1 and trials > 1:
        blocks = _blocks(trials, workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_count_block, seq_json, n, sentence_id, seed, a, b)
                for a, b in blocks
            ]
            successes = sum(f.result() for f in futures)
    else:
        successes = _count_block(seq_json, n, sentence_id, seed, 0, trials)

    low, high = wilson_interval(successes, trials, alpha)
    estimate = Estimate(
        successes=successes,
        trials=trials,
        point=successes / trials,
        ci_low=low,
        ci_high=high,
        alpha=alpha,
    )
    logger.debug(
        f"{sentence_id} at n={n}: {successes}/{trials} "
        f"ci=[{low:.4f}, {high:.4f}]"
    )
    return estimate


class EstimatorHandle(Protocol):
    """What the constructor needs from an estimator."""

    def estimate(
        self, seq: ProbSeq, n: int, sentence_id: str, trials: int
    ) -> Estimate: ...


@dataclass
class EstimatorStats:
    """Running totals for one estimator handle."""

    calls: int = 0
    samples: int = 0
    total_time: float = 0.0
    max_n: int = 0
    history: list[tuple[int, str, int]] = field(default_factory=list)

    def record(self, n: int, sentence_id: str, trials: int, elapsed: float) -> None:
        self.calls += 1
        self.samples += trials
        self.total_time += elapsed
        self.max_n = max(self.max_n, n)
        self.history.append((n, sentence_id, trials))


@dataclass
class MonteCarloEstimator:
    """Sampling-backed estimator handle; each call is seeded from (seed, n)."""

    config: EstimatorConfig = field(default_factory=EstimatorConfig)
    seed: int = 0
    stats: EstimatorStats = field(default_factory=EstimatorStats)

    def estimate(
        self, seq: ProbSeq, n: int, sentence_id: str, trials: int
    ) -> Estimate:
        started = time.perf_counter()
        result = estimate_prob(
            seq,
            n,
            sentence_id,
            trials,
            seed=derive_seed(self.seed, n),
            alpha=self.config.alpha,
            workers=self.config.workers,
        )
        self.stats.record(n, sentence_id, trials, time.perf_counter() - started)
        return result


def checkpoint_passes(
    expected: Expectation, confidence: float, estimate: Estimate, slack: float
) -> bool:
    if expected is Expectation.HOLDS:
        return estimate.ci_low >= confidence - slack
    return estimate.ci_high <= 1 - confidence + slack


def verify_plan(
    plan: OscillationPlan,
    trials: int,
    seed: int = 0,
    alpha: float = 0.05,
    slack: float = 0.1,
    workers: int = 1,
) -> VerificationReport:
    """Estimate every checkpoint of ``plan`` and judge the oscillation."""
    if not plan.checkpoints:
        raise InvalidParamsError("plan has no checkpoints")

    rows = []
    for index, cp in enumerate(plan.checkpoints):
        est = estimate_prob(
            plan.built_q,
            cp.n,
            cp.sentence_id,
            trials,
            seed=derive_seed(seed, index),
            alpha=alpha,
            workers=workers,
        )
        passed = checkpoint_passes(cp.expected, cp.confidence, est, slack)
        rows.append(
            CheckpointResult(
                variant=plan.variant,
                n=cp.n,
                sentence=cp.sentence_id,
                trials=trials,
                point=est.point,
                ci_low=est.ci_low,
                ci_high=est.ci_high,
                expected=cp.expected,
                passed=passed,
            )
        )
        logger.info(
            f"checkpoint n={cp.n} {cp.sentence_id} expected {cp.expected.value}: "
            f"{est.point:.4f} [{est.ci_low:.4f}, {est.ci_high:.4f}] "
            f"{'pass' if passed else 'FAIL'}"
        )

    expected = [cp.expected for cp in plan.checkpoints]
    alternates = all(a is not b for a, b in zip(expected, expected[1:]))
    return VerificationReport(
        variant=plan.variant,
        rows=rows,
        alternates=alternates,
        oscillates=alternates and all(r.passed for r in rows),
    )


def write_rows_csv(
    rows: Iterable[dict], path: str | Path, fieldnames: list[str] | None = None
) -> Path:
    """Write dict rows as UTF-8 CSV with a header."""
    rows = list(rows)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fieldnames is None:
        fieldnames = list(rows[0].keys()) if rows else []
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=fieldnames)
        writer.writeheader()
        writer.writerows(rows)
    return path


def write_report_csv(report: VerificationReport, path: str | Path) -> Path:
    return write_rows_csv((row.csv_row() for row in report.rows), path, CSV_FIELDS)
