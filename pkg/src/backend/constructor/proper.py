"""Proper sequences: every triangle is an arithmetic triple with gap l*."""

from __future__ import annotations

import logging

from ..errors import InvalidSequenceError, NotEnoughSupportError
from ..gen import Gen1Builder
from ..models import ProbSeq, ProperCert
from .scan import is_fractional, is_one, scan_indices

logger = logging.getLogger(__name__)


def proper_modulus(l_star: int) -> int:
    """l** = 3l* + 2."""
    return 3 * l_star + 2


def validate_proper(q: ProbSeq) -> ProperCert:
    """Accept iff the first two nonzero indices are l*, 2l* and every later
    nonzero index is 1 modulo l** = 3l* + 2."""
    if not q.is_finite:
        raise InvalidSequenceError("properness is checked on finite sequences")
    support = q.nonzero_indices()
    if len(support) < 2:
        raise NotEnoughSupportError(
            f"need two nonzero entries, found {len(support)}"
        )
    l_star, second, *rest = support
    l_double_star = proper_modulus(l_star)
    if second != 2 * l_star:
        return ProperCert(
            accepted=False,
            l_star=l_star,
            l_double_star=l_double_star,
            violation=(l_star, second),
            reason=f"second nonzero index {second} is not 2*{l_star}",
        )
    for l in rest:
        if l % l_double_star != 1:
            return ProperCert(
                accepted=False,
                l_star=l_star,
                l_double_star=l_double_star,
                violation=(l,),
                reason=f"{l} is not 1 mod {l_double_star}",
            )
    return ProperCert(accepted=True, l_star=l_star, l_double_star=l_double_star)


def proper_base_builder(
    p: ProbSeq, limit: int = 10_000_000
) -> tuple[Gen1Builder, int]:
    """Start a proper Gen_1 copy of p from its first two fractional entries.

    With l1 < l2 those indices, p_{l1} goes to a = max(l1, l2 - l1) and
    p_{l2} to 2a, which leaves room for the entries of p in between.
    Returns the builder (r = l2 consumed entries) and l* = a.
    """
    l1, l2 = _first_two(p, limit)
    if scan_indices(p, is_one, 1, l2 - 1):
        raise NotEnoughSupportError(
            f"p has a probability-one entry before index {l2}"
        )
    a = max(l1, l2 - l1)
    builder = Gen1Builder(p)
    builder.place_next_nonzero(a)
    builder.place_next_nonzero(2 * a)
    logger.debug(f"proper base from l1={l1}, l2={l2}: l*={a}")
    return builder, a


def make_proper_base(p: ProbSeq, limit: int = 10_000_000) -> tuple[ProbSeq, int]:
    """The proper base prefix q0 and the number r0 of consumed entries of p."""
    builder, _ = proper_base_builder(p, limit)
    return builder.build(), builder.r


def _first_two(p: ProbSeq, limit: int) -> tuple[int, int]:
    support = scan_indices(p, is_fractional, 2, limit)
    if len(support) < 2:
        raise NotEnoughSupportError(
            f"need two entries strictly between 0 and 1 within {limit}, "
            f"found {len(support)}"
        )
    return support[0], support[1]
