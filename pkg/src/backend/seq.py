"""Probability sequences and the asymptotic conditions evaluated on them."""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence

import numpy as np

from .errors import InvalidGridError, InvalidIndexError
from .models import (
    ConditionReport,
    HereditaryReport,
    LawStatus,
    ProbSeq,
    TailKind,
    Verdict,
)

logger = logging.getLogger(__name__)

DEFAULT_TAU = 0.1
# |value| counts as shrinking when it lost more than a quarter over the window
DEFAULT_SHRINK_RATIO = 0.75


def prob_at(seq: ProbSeq, l: int) -> float:
    """p_l for l >= 1."""
    if l < 1:
        raise InvalidIndexError(f"index must be >= 1, got {l}")
    if l <= len(seq.prefix):
        return float(seq.prefix[l - 1])
    return seq.tail.value(l)


def probabilities(seq: ProbSeq, upto: int) -> np.ndarray:
    """Array of p_1..p_upto (position 0 holds p_1)."""
    if upto <= 0:
        return np.zeros(0, dtype=np.float64)
    m = min(len(seq.prefix), upto)
    out = np.empty(upto, dtype=np.float64)
    out[:m] = seq.prefix[:m]
    if upto > m:
        out[m:] = seq.tail.values(np.arange(m + 1, upto + 1))
    return out


def log_complements(seq: ProbSeq, upto: int) -> np.ndarray:
    """Array of log(1 - p_l) for l = 1..upto; -inf where p_l = 1."""
    m = min(len(seq.prefix), upto)
    out = np.empty(max(upto, 0), dtype=np.float64)
    with np.errstate(divide="ignore"):
        out[:m] = np.log1p(-np.asarray(seq.prefix[:m], dtype=np.float64))
    if upto > m:
        out[m:] = seq.tail.log_complements(np.arange(m + 1, upto + 1))
    return out


def log_survival(seq: ProbSeq, n: int, mask: Iterable[int] | None = None) -> float:
    """Natural log of prod_{l<=n} (1 - p_l), summed left to right.

    Indices in ``mask`` are left out of the product.
    """
    if n < 1:
        raise InvalidIndexError(f"n must be >= 1, got {n}")
    terms = log_complements(seq, n)
    if mask is not None:
        excluded = [l - 1 for l in mask if 1 <= l <= n]
        terms[excluded] = 0.0
    if np.isneginf(terms).any():
        return -math.inf
    return float(np.cumsum(terms)[-1])


def f_value(seq: ProbSeq, n: int, mask: Iterable[int] | None = None) -> float:
    """log_survival(seq, n) / log(n)."""
    if n < 2:
        raise InvalidIndexError(f"f is defined for n >= 2, got {n}")
    return log_survival(seq, n, mask) / math.log(n)


def ustar(seq: ProbSeq, upto: int) -> list[int]:
    """Indices l <= upto with p_l = 1."""
    return [int(i) + 1 for i in np.flatnonzero(probabilities(seq, upto) >= 1.0)]


def ustar_is_finite(seq: ProbSeq) -> bool:
    tail = seq.tail
    if tail.kind is TailKind.ONES_AT:
        return False
    if tail.kind is TailKind.CONST:
        return tail.p < 1.0
    # zero and harmonic tails never reach 1; power laws only up to c^(1/alpha)
    return True


def ustar_horizon(seq: ProbSeq) -> int:
    """An index beyond which a finite U* has no members."""
    horizon = len(seq.prefix)
    if seq.tail.kind is TailKind.POWERLAW:
        horizon = max(horizon, int(math.floor(seq.tail.c ** (1.0 / seq.tail.alpha))))
    return max(horizon, 1)


def _check_grid(n_grid: Sequence[int]) -> list[int]:
    grid = [int(n) for n in n_grid]
    if not grid:
        raise InvalidGridError("grid must be nonempty")
    if any(n < 2 for n in grid):
        raise InvalidGridError(f"grid points must be >= 2: {grid}")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidGridError(f"grid must be strictly increasing: {grid}")
    return grid


def _trend_verdict(
    values: list[float], tau: float, shrink_ratio: float, signed: bool
) -> Verdict:
    mags = values if signed else [abs(v) for v in values]
    window = mags[-3:]
    last, ref = window[-1], window[0]
    if last > tau and (math.isinf(last) or last >= shrink_ratio * ref):
        return Verdict.FAILS
    if last < tau and last <= ref:
        return Verdict.HOLDS
    return Verdict.INCONCLUSIVE


def classify_conditions(
    seq: ProbSeq,
    n_grid: Sequence[int],
    tau: float = DEFAULT_TAU,
    shrink_ratio: float = DEFAULT_SHRINK_RATIO,
) -> ConditionReport:
    """Empirical verdicts for the survival-exponent and partial-sum conditions.

    The survival condition uses |f(n)|; the partial-sum condition uses the
    signed ratio log(sum p)/log n, which is -inf for an all-zero range.
    """
    grid = _check_grid(n_grid)
    n_max = grid[-1]
    survival = np.cumsum(log_complements(seq, n_max))
    sums = np.cumsum(probabilities(seq, n_max))

    f_values, sum_values, g_values = [], [], []
    for n in grid:
        log_n = math.log(n)
        f_values.append((n, float(survival[n - 1]) / log_n))
        total = float(sums[n - 1])
        sum_values.append((n, total))
        g_values.append(math.log(total) / log_n if total > 0 else -math.inf)

    report = ConditionReport(
        f_values=f_values,
        sum_values=sum_values,
        ustar_prefix=ustar(seq, n_max),
        verdict_star=_trend_verdict(
            [f for _, f in f_values], tau, shrink_ratio, signed=False
        ),
        verdict_double_star=_trend_verdict(g_values, tau, shrink_ratio, signed=True),
        tau=tau,
    )
    logger.debug(
        f"classified up to n={n_max}: (*) {report.verdict_star.value}, "
        f"(**) {report.verdict_double_star.value}"
    )
    return report


def _has_fractional(seq: ProbSeq) -> bool:
    if any(0.0 < x < 1.0 for x in seq.prefix):
        return True
    tail = seq.tail
    if tail.kind is TailKind.CONST:
        return 0.0 < tail.p < 1.0
    return tail.kind in (TailKind.HARMONIC, TailKind.POWERLAW)


def _support_at_most_one(seq: ProbSeq) -> bool:
    if seq.tail.kind is not TailKind.ZERO:
        if seq.tail.kind is TailKind.CONST and seq.tail.p == 0.0:
            return sum(1 for x in seq.prefix if x > 0) <= 1
        return False
    return sum(1 for x in seq.prefix if x > 0) <= 1


def _from_verdict(verdict: Verdict) -> LawStatus:
    return {
        Verdict.HOLDS: LawStatus.HOLDS_EMPIRICALLY,
        Verdict.FAILS: LawStatus.FAILS_EMPIRICALLY,
        Verdict.INCONCLUSIVE: LawStatus.INCONCLUSIVE,
    }[verdict]


def hereditary_verdicts(
    seq: ProbSeq, n_grid: Sequence[int], tau: float = DEFAULT_TAU
) -> HereditaryReport:
    """Predict the j-hereditary 0-1 law for j = 1, 2, 3 from the U* case split.

    Infinite U*: fails for every j. Finite nonempty U*: the law holds iff no
    entry lies strictly between 0 and 1 (j = 1 needs |U*| >= 2, otherwise
    open); for j = 2 it holds iff at most one entry is positive. Empty U*:
    j = 1 follows the survival-exponent condition, j = 2, 3 the partial-sum
    condition, both as empirical grid verdicts.
    """
    fractional = _has_fractional(seq)
    small_support = _support_at_most_one(seq)
    if not ustar_is_finite(seq):
        laws = {j: LawStatus.FAILS for j in (1, 2, 3)}
        return HereditaryReport(
            ustar_finite=False,
            has_fractional=fractional,
            support_size_at_most_one=small_support,
            laws=laws,
        )

    members = ustar(seq, ustar_horizon(seq))
    if members:
        decided = LawStatus.FAILS if fractional else LawStatus.HOLDS
        laws = {
            1: decided if len(members) >= 2 else LawStatus.OPEN,
            2: LawStatus.HOLDS if small_support else LawStatus.FAILS,
            3: decided,
        }
    else:
        report = classify_conditions(seq, n_grid, tau)
        partial_sum = _from_verdict(report.verdict_double_star)
        laws = {
            1: _from_verdict(report.verdict_star),
            2: partial_sum,
            3: partial_sum,
        }
    return HereditaryReport(
        ustar_finite=True,
        ustar=members,
        has_fractional=fractional,
        support_size_at_most_one=small_support,
        laws=laws,
    )
