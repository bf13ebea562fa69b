"""Closed-form probability bounds used to size experiments and gate steps.

All products are evaluated as sums of logarithms. A returned ``BoundValue``
is a bound, not a probability, and may exceed 1.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from .errors import InvalidParamsError, InvalidSequenceError
from .models import BoundValue, ProbSeq
from .seq import log_complements, prob_at

logger = logging.getLogger(__name__)


def _exp(log_value: float) -> float:
    if log_value == -math.inf:
        return 0.0
    return math.exp(min(log_value, 700.0))


def _log(x: float) -> float:
    return math.log(x) if x > 0 else -math.inf


def _check_k(k: int) -> None:
    if k < 2 or k % 2:
        raise InvalidParamsError(f"k must be even and >= 2, got {k}")


def _log_survival_between(
    q: ProbSeq, low: int, high: int, exclude_ones: bool = False
) -> float:
    """sum of log(1 - q_l) for low <= l <= high."""
    if high < max(low, 1):
        return 0.0
    terms = log_complements(q, high)[max(low, 1) - 1 :]
    if exclude_ones:
        terms = terms[np.isfinite(terms)]
    elif np.isneginf(terms).any():
        return -math.inf
    return float(terms.sum())


def _arithmetic_weight(q: ProbSeq, k: int, l_star: int) -> float:
    """log of q_{l*}^k * q_{2l*}^{k/2}."""
    return k * _log(prob_at(q, l_star)) + (k // 2) * _log(prob_at(q, 2 * l_star))


def chain_success_floor(
    q: ProbSeq, k: int, l_star: int, exclude_ones: bool = False
) -> BoundValue:
    """Lower bound p* on the chance that one arithmetic candidate is a chain.

    p* = q_{l*}^k * q_{2l*}^{k/2} * (prod_{l < n_q} (1 - q_l))^{2(k+1)}.
    ``exclude_ones`` drops factors with q_l = 1 from the product.
    """
    _check_k(k)
    if not q.is_finite:
        raise InvalidSequenceError("chain success floor needs a finite prefix")
    inputs = {"k": k, "l_star": l_star, "n_q": q.n_q}
    if prob_at(q, l_star) == 0.0 or prob_at(q, 2 * l_star) == 0.0:
        return BoundValue(value=0.0, formula_id="chain-success-floor", inputs=inputs)

    from .constructor.proper import validate_proper

    cert = validate_proper(q)
    if not cert.accepted or cert.l_star != l_star:
        raise InvalidSequenceError(f"q is not proper for l*={l_star}: {cert.reason}")
    log_value = _arithmetic_weight(q, k, l_star) + 2 * (k + 1) * _log_survival_between(
        q, 1, q.n_q - 1, exclude_ones
    )
    return BoundValue(
        value=_exp(log_value), formula_id="chain-success-floor", inputs=inputs
    )


def chain_failure_cap(
    q: ProbSeq, k: int, l_star: int, n: int, exclude_ones: bool = False
) -> BoundValue:
    """Upper bound (1 - p*)^floor(n / (2n* + 1)) on Pr[no chain], n* = max(n_q, k*l*).

    Only meaningful once n > 6n*; below that the trivial bound 1 is returned.
    """
    floor = chain_success_floor(q, k, l_star, exclude_ones)
    n_star = max(q.n_q, k * l_star)
    inputs = {**floor.inputs, "n": n, "n_star": n_star, "p_star": floor.value}
    if n <= 6 * n_star or floor.value == 0.0:
        return BoundValue(value=1.0, formula_id="chain-failure-cap", inputs=inputs)
    blocks = n // (2 * n_star + 1)
    value = _exp(blocks * math.log1p(-min(floor.value, 1.0)))
    return BoundValue(value=value, formula_id="chain-failure-cap", inputs=inputs)


def expected_ceiling_value(p_star: float, k: int, eps: float, n: int) -> float:
    """p* * 4 * n^(1 - eps*k/2)."""
    if k * eps <= 2:
        raise InvalidParamsError(f"need k*eps > 2, got k={k}, eps={eps}")
    return p_star * 4.0 * _exp((1.0 - eps * k / 2.0) * math.log(n))


def chain_expected_ceiling(
    q_prefix: ProbSeq, p: ProbSeq, k: int, eps: float, n: int
) -> BoundValue:
    """Markov ceiling p* * 4 * n^(1 - eps*k/2) on Pr[chain of k/2 triangles].

    Here p* = q_{l*}^k * q_{2l*}^{k/2} * (prod_{l <= n*} (1 - q_l))^-k with
    n* = max(k*l*, n_q + l*); the decay assumes the base ``p`` satisfies
    prod_{l<=n} (1 - p_l) <= n^-eps on the relevant n.
    """
    _check_k(k)
    if k * eps <= 2:
        raise InvalidParamsError(f"need k*eps > 2, got k={k}, eps={eps}")
    from .constructor.proper import validate_proper

    cert = validate_proper(q_prefix)
    if not cert.accepted:
        raise InvalidSequenceError(f"q is not proper: {cert.reason}")
    l_star = cert.l_star
    n_star = max(k * l_star, q_prefix.n_q + l_star)
    log_p_star = _arithmetic_weight(q_prefix, k, l_star) - k * _log_survival_between(
        q_prefix, 1, n_star
    )
    p_star = _exp(log_p_star)
    return BoundValue(
        value=expected_ceiling_value(p_star, k, eps, n),
        formula_id="chain-expected-ceiling",
        inputs={
            "k": k,
            "eps": eps,
            "n": n,
            "l_star": l_star,
            "p_star": p_star,
            "base_tail": p.tail.kind.value,
        },
    )


def chain_candidate_ceiling(q: ProbSeq, k: int, l_star: int, n: int) -> BoundValue:
    """Expected number of chains among all candidates, evaluated on the actual q.

    4n * q_{l*}^k * q_{2l*}^{k/2} * (prod_{n* < l <= (n-n*)/2} (1 - q_l))^k with
    n* = k*l*: every candidate vertex misses a partner at each such distance.
    Entries of q beyond its prefix count as zero.
    """
    _check_k(k)
    n_star = k * l_star
    high = (n - n_star) // 2
    log_value = (
        math.log(4 * n)
        + _arithmetic_weight(q, k, l_star)
        + k * _log_survival_between(q, n_star + 1, high)
    )
    return BoundValue(
        value=_exp(log_value),
        formula_id="chain-candidate-ceiling",
        inputs={"k": k, "l_star": l_star, "n": n, "n_star": n_star},
    )


def poisson_tail_bound(lam: float, i: int) -> BoundValue:
    """Chernoff bound e^(lam(i/lam - 1)) * (lam/i)^i on Pr[Po(lam) >= i]."""
    if lam <= 0 or i < 1:
        raise InvalidParamsError(f"need lam > 0 and i >= 1, got lam={lam}, i={i}")
    log_value = (i - lam) + i * math.log(lam / i)
    return BoundValue(
        value=_exp(log_value),
        formula_id="poisson-chernoff",
        inputs={"lam": lam, "i": i},
    )


def degree_event_params(n: int, delta: float) -> tuple[int, BoundValue]:
    """Degree threshold ceil(8 n^(2 delta)) and the cap n (e/3)^(3 n^(2 delta))."""
    if n < 2 or delta <= 0:
        raise InvalidParamsError(f"need n >= 2 and delta > 0, got n={n}, delta={delta}")
    power = n ** (2 * delta)
    threshold = math.ceil(8 * power)
    log_cap = math.log(n) + 3 * power * (1.0 - math.log(3.0))
    cap = BoundValue(
        value=_exp(log_cap),
        formula_id="degree-event-cap",
        inputs={"n": n, "delta": delta, "threshold": threshold},
    )
    return threshold, cap


def nice_boundary_cap(neighbor_mass: float, eps: float, m: int) -> BoundValue:
    """neighbor_mass * (1 - eps^11)^(m/2 - 1)."""
    if m < 2:
        raise InvalidParamsError(f"m must be >= 2, got {m}")
    if not 0 < eps < 1 or neighbor_mass < 0:
        raise InvalidParamsError(
            f"need eps in (0, 1) and mass >= 0, got {eps}, {neighbor_mass}"
        )
    log_value = _log(neighbor_mass) + (m / 2 - 1) * math.log1p(-(eps**11))
    return BoundValue(
        value=_exp(log_value),
        formula_id="nice-boundary-cap",
        inputs={"mass": neighbor_mass, "eps": eps, "m": m},
    )


def isolated_point_cap(n: int, eps: float) -> BoundValue:
    """2n * e^(-(n/5)^eps), the expected isolated-point count on a dense band."""
    log_value = math.log(2 * n) - (n / 5) ** eps
    return BoundValue(
        value=_exp(log_value),
        formula_id="isolated-point-cap",
        inputs={"n": n, "eps": eps},
    )


def isolated_expectation_cap(q: ProbSeq, n: int) -> BoundValue:
    """n * prod_{l <= (n-1)/2} (1 - q_l); every vertex sees one side of each such l."""
    log_value = math.log(n) + _log_survival_between(q, 1, (n - 1) // 2)
    return BoundValue(
        value=_exp(log_value),
        formula_id="isolated-expectation-cap",
        inputs={"n": n},
    )


def independence_failure_cap(
    p_prime: float, n: int, spacing: int, span: int = 0
) -> BoundValue:
    """(1 - p')^m for m events of chance >= p' placed ``spacing + 1`` apart.

    Each event lives on a window of width ``span`` starting at its anchor.
    """
    anchors = 0 if n <= span else (n - span - 1) // (spacing + 1) + 1
    if p_prime <= 0:
        value = 1.0
    else:
        value = _exp(anchors * math.log1p(-min(p_prime, 1.0)))
    return BoundValue(
        value=value,
        formula_id="independence-failure-cap",
        inputs={"p_prime": p_prime, "n": n, "spacing": spacing, "anchors": anchors},
    )


def isolated_path_expectation_cap(n: int, k: int, eps: float) -> BoundValue:
    """8^k * n^(1 - k eps / 6), on the bounded-degree event."""
    log_value = k * math.log(8) + (1 - k * eps / 6) * math.log(n)
    return BoundValue(
        value=_exp(log_value),
        formula_id="isolated-path-expectation-cap",
        inputs={"n": n, "k": k, "eps": eps},
    )


def boundary_gap_cap(q: ProbSeq, l_star: int) -> BoundValue:
    """1 - p^(2 C(l*, 2)) with p = min_{0<d<l*} (1 - q_d)."""
    p = min((1.0 - prob_at(q, d) for d in range(1, l_star)), default=1.0)
    pairs = 2 * math.comb(l_star, 2)
    value = 1.0 - p**pairs
    return BoundValue(
        value=max(value, 0.0),
        formula_id="boundary-gap-cap",
        inputs={"l_star": l_star, "p": p},
    )


def nice_positive_cap(p_one: float, mass: float, l_star: int) -> BoundValue:
    """2l* / (p1 * mass), by Chebyshev over the far neighbors of the boundary."""
    if p_one <= 0 or mass <= 0:
        value = math.inf
    else:
        value = 2 * l_star / (p_one * mass)
    return BoundValue(
        value=value,
        formula_id="nice-positive-cap",
        inputs={"p_one": p_one, "mass": mass, "l_star": l_star},
    )
