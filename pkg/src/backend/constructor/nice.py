"""Nice sequences: no accidental additive relations among nonzero indices."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from itertools import combinations_with_replacement

from ..errors import InvalidSequenceError
from ..models import NiceCert, ProbSeq

logger = logging.getLogger(__name__)


class NiceSupport:
    """A growing set of indices kept free of short additive relations.

    ``forbidden`` holds every value a new (largest) index must avoid:
    sums of two or three members, differences b + c - a and midpoints
    (b + c) / 2.
    """

    def __init__(self, indices: Iterable[int] = ()):
        self.indices: list[int] = []
        self.forbidden: set[int] = set()
        for l in sorted(indices):
            self.add(l)

    @property
    def top(self) -> int:
        return self.indices[-1] if self.indices else 0

    def admits(self, position: int) -> bool:
        return position > self.top and position not in self.forbidden

    def add(self, x: int) -> None:
        members = [*self.indices, x]
        for a in members:
            total = x + a
            self.forbidden.add(total)
            if total % 2 == 0:
                self.forbidden.add(total // 2)
            for b in members:
                self.forbidden.add(total + b)
                self.forbidden.add(total - b)
                self.forbidden.add(a + b - x)
        self.indices.append(x)

    def next_position(self, minimum: int) -> int:
        position = max(minimum, self.top + 1)
        while position in self.forbidden:
            position += 1
        return position


def validate_nice(q: ProbSeq) -> NiceCert:
    """Check the four niceness clauses over the finite prefix of q.

    (a) exactly one entry equals 1, at l*; (b) no l1 + l2 = l3 and (c) no
    l1 + l2 + l3 = l4 among nonzero indices; (d) equal pair sums below n_q
    come from the same pair.
    """
    if not q.is_finite:
        raise InvalidSequenceError("niceness is checked on finite sequences")
    ones = [i + 1 for i, x in enumerate(q.prefix) if x >= 1.0]
    if len(ones) != 1:
        return NiceCert(
            accepted=False,
            violation=tuple(ones) or None,
            clause="a",
        )
    l_star = ones[0]
    base = {"l_star": l_star, "l_double_star": 2 * l_star}

    support = q.nonzero_indices()
    members = set(support)
    pairs = list(combinations_with_replacement(support, 2))
    for a, b in pairs:
        if a + b in members:
            return NiceCert(accepted=False, violation=(a, b, a + b), clause="b", **base)
    for a, b in pairs:
        for c in support:
            if c >= b and a + b + c in members:
                return NiceCert(
                    accepted=False, violation=(a, b, c, a + b + c), clause="c", **base
                )
    seen: dict[int, tuple[int, int]] = {}
    for a, b in pairs:
        if a + b >= q.n_q:
            continue
        other = seen.setdefault(a + b, (a, b))
        if other != (a, b):
            return NiceCert(
                accepted=False, violation=(*other, a, b), clause="d", **base
            )
    return NiceCert(accepted=True, **base)
