"""Sum-free layouts whose boundary is first-order visible.

A boundary sequence has its first two ones at an odd l* and at 2l*, and no
nonzero index is the sum of two others except 2l* = l* + l*. Every triangle
is then {x, x + l*, x + 2l*}, and exactly the 2l* boundary vertices lie on a
single triangle.
"""

from __future__ import annotations

import copy
import logging

from ..errors import BudgetExceededError, HypothesisViolationError, InvalidSequenceError
from ..gen import Gen1Builder
from ..models import BoundaryCert, ProbSeq
from ..seq import prob_at
from .scan import is_one, scan_indices

logger = logging.getLogger(__name__)


def validate_boundary(q: ProbSeq) -> BoundaryCert:
    if not q.is_finite:
        raise InvalidSequenceError("boundary demands are checked on finite sequences")
    ones = [i + 1 for i, x in enumerate(q.prefix) if x >= 1.0]
    if len(ones) < 2:
        return BoundaryCert(
            accepted=False,
            violation=tuple(ones) or None,
            reason=f"need two probability-one entries, found {len(ones)}",
        )
    l_star, second = ones[0], ones[1]
    base = {"l_star": l_star, "l_double_star": 2 * l_star}
    if l_star % 2 == 0:
        return BoundaryCert(
            accepted=False, violation=(l_star,), reason=f"l*={l_star} is even", **base
        )
    if second != 2 * l_star:
        return BoundaryCert(
            accepted=False,
            violation=(l_star, second),
            reason=f"second one at {second}, not 2*{l_star}",
            **base,
        )
    support = q.nonzero_indices()
    members = set(support)
    for i, a in enumerate(support):
        for b in support[i:]:
            if a + b in members and not (a == b == l_star):
                return BoundaryCert(
                    accepted=False,
                    violation=(a, b, a + b),
                    reason=f"{a} + {b} = {a + b} are all nonzero",
                    **base,
                )
    return BoundaryCert(accepted=True, **base)


class SumFreeSupport:
    """Nonzero indices together with all their pairwise sums."""

    def __init__(self, indices=()):
        self.indices: list[int] = []
        self.sums: set[int] = set()
        for l in sorted(indices):
            self.add(l)

    @property
    def top(self) -> int:
        return self.indices[-1] if self.indices else 0

    def add(self, x: int) -> None:
        self.indices.append(x)
        self.sums.update(x + a for a in self.indices)

    def next_position(self, minimum: int) -> int:
        position = max(minimum, self.top + 1)
        while position in self.sums:
            position += 1
        return position


class BoundaryLayout:
    """Gen_1 copy of p laid out to meet the boundary demands."""

    def __init__(self, p: ProbSeq, limit: int):
        self.p = p
        self.limit = limit
        self.builder = Gen1Builder(p)
        self.support = SumFreeSupport()
        self.l_star: int | None = None

    def _place_entry(self) -> tuple[int, float]:
        if self.builder.r >= self.limit:
            raise BudgetExceededError(
                f"consumed {self.builder.r} entries of p without finding a one"
            )
        value = prob_at(self.p, self.builder.r + 1)
        if value == 0.0:
            position = self.builder.length + 1
        else:
            position = self.support.next_position(self.builder.length + 1)
            self.support.add(position)
        self.builder.place_next(position)
        return position, value

    def start(self) -> int:
        """Place p up to its second one; returns l*."""
        ones = scan_indices(self.p, is_one, 2, self.limit)
        if len(ones) < 2:
            raise HypothesisViolationError(
                "two probability-one entries", f"found {ones} within {self.limit}"
            )
        u1, u2 = ones
        while self.builder.r + 1 < u1:
            self._place_entry()

        a = self.support.next_position(self.builder.length + 1)
        a += 1 - a % 2
        while a <= self.limit:
            if a not in self.support.sums and self._try_pair(a, u2):
                self.l_star = a
                logger.debug(f"boundary layout: l*={a}, second one at {2 * a}")
                return a
            a += 2
        raise BudgetExceededError(f"no odd l* up to {self.limit} fits the layout")

    def _try_pair(self, a: int, u2: int) -> bool:
        builder = copy.deepcopy(self.builder)
        support = copy.deepcopy(self.support)
        builder.place_next(a)
        support.add(a)
        while builder.r + 1 < u2:
            if prob_at(self.p, builder.r + 1) == 0.0:
                builder.place_next(builder.length + 1)
                continue
            position = builder.length + 1
            while position < 2 * a and (
                position in support.sums or (2 * a - position) in support.indices
            ):
                position += 1
            if position >= 2 * a:
                return False
            builder.place_next(position)
            support.add(position)
        if builder.length >= 2 * a:
            return False
        if any(2 * a - x in support.indices for x in support.indices if x != a):
            return False
        builder.place_next(2 * a)
        support.add(2 * a)
        self.builder, self.support = builder, support
        return True

    def place_until_one(self) -> int:
        """Consume p through its next one; returns where it was placed."""
        while True:
            position, value = self._place_entry()
            if value >= 1.0:
                return position
