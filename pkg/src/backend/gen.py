"""Gen_1 / Gen_2 / Gen_3 transformations and membership for finite prefixes.

Gen_1 inserts zeros (q = (p restricted to [r])^f for an increasing f),
Gen_2 lowers entries into [0, p_l], Gen_3 replaces entries by 0 or p_l.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

from pydantic import ValidationError

from .errors import (
    ArityError,
    InvalidMapError,
    InvalidParamsError,
    InvalidSequenceError,
)
from .models import GenWitness, ProbSeq, StretchMap
from .seq import prob_at, probabilities

logger = logging.getLogger(__name__)


def as_stretch_map(f: StretchMap | Sequence[int]) -> StretchMap:
    if isinstance(f, StretchMap):
        return f
    try:
        return StretchMap(image_points=tuple(int(x) for x in f))
    except ValidationError as exc:
        raise InvalidMapError(str(exc.errors()[0]["msg"])) from exc


def _require_finite(q: ProbSeq, name: str = "q") -> None:
    if not q.is_finite:
        raise InvalidSequenceError(f"{name} must be finite (zero tail)")


def stretch(q: ProbSeq, f: StretchMap | Sequence[int]) -> ProbSeq:
    """q^f: entry f(i) carries q_i, every other position is zero."""
    _require_finite(q)
    f = as_stretch_map(f)
    m = len(q.prefix)
    if len(f) != m + 1:
        raise ArityError(f"map needs {m + 1} image points, got {len(f)}")
    out = [0.0] * (f(m + 1) - 1)
    for i, value in enumerate(q.prefix, start=1):
        out[f(i) - 1] = value
    return ProbSeq.finite(out)


def compose(f: StretchMap | Sequence[int], g: StretchMap | Sequence[int]) -> StretchMap:
    """g after f, so that stretch(stretch(q, f), g) == stretch(q, compose(f, g))."""
    f, g = as_stretch_map(f), as_stretch_map(g)
    if len(g) != f.image_points[-1]:
        raise ArityError(
            f"outer map needs {f.image_points[-1]} image points, got {len(g)}"
        )
    return StretchMap(image_points=tuple(g(x) for x in f.image_points))


def extends(q: ProbSeq, q2: ProbSeq) -> bool:
    """q is a prefix of q2 in the sense n_q <= n_q2 and agreement below n_q."""
    _require_finite(q)
    _require_finite(q2, "q2")
    return len(q2.prefix) >= len(q.prefix) and q2.prefix[: len(q.prefix)] == q.prefix


def _refuse(mode: int, index: int) -> GenWitness:
    return GenWitness(accepted=False, mode=mode, violation=index)


def _member_insert_zeros(q: ProbSeq, p: ProbSeq) -> GenWitness:
    values = q.prefix
    length = len(values)
    targets = [l for l in range(1, length + 1) if values[l - 1] > 0]
    if not targets:
        # r = 0: the empty restriction of p stretched to length n_q
        witness = StretchMap(image_points=(length + 1,))
        return GenWitness(accepted=True, mode=1, witness=witness, r=0)

    points: list[int] = []
    last = 0
    j = 0
    for target in targets:
        while True:
            j += 1
            pj = prob_at(p, j)
            if pj == 0.0:
                slot = last + 1
                if slot >= target:
                    return _refuse(1, target)
                points.append(slot)
                last = slot
                continue
            if pj != values[target - 1]:
                return _refuse(1, target)
            points.append(target)
            last = target
            break

    witness = StretchMap(image_points=(*points, length + 1))
    return GenWitness(accepted=True, mode=1, witness=witness, r=len(points))


def gen_member(q: ProbSeq, p: ProbSeq, mode: int) -> GenWitness:
    """Decide q in Gen_mode(p) over the finite prefix of q.

    Mode 1 returns the greedy leftmost witness: every nonzero entry of p is
    sent to the next nonzero entry of q and p's own zeros take the leftmost
    free zero slots in between.
    """
    _require_finite(q)
    if mode == 1:
        return _member_insert_zeros(q, p)
    if mode not in (2, 3):
        raise InvalidParamsError(f"mode must be 1, 2 or 3, got {mode}")

    reference = probabilities(p, len(q.prefix))
    for l, (ql, pl) in enumerate(zip(q.prefix, reference), start=1):
        ok = ql <= pl if mode == 2 else (ql == 0.0 or ql == pl)
        if not ok:
            return _refuse(mode, l)
    return GenWitness(accepted=True, mode=mode)


class Gen1Builder:
    """Grow a Gen_1 copy of ``p`` by consuming its entries in order.

    ``r`` counts the consumed entries of p; the witness map records where
    each one was placed.
    """

    def __init__(
        self,
        p: ProbSeq,
        start: ProbSeq | None = None,
        r: int = 0,
        points: Sequence[int] = (),
    ):
        self.p = p
        self.values: list[float] = list(start.prefix) if start is not None else []
        self.r = r
        self.points: list[int] = list(points)

    @property
    def length(self) -> int:
        return len(self.values)

    def max_nonzero(self) -> int:
        for l in range(len(self.values), 0, -1):
            if self.values[l - 1] > 0:
                return l
        return 0

    def pad_to(self, length: int) -> None:
        if length > len(self.values):
            self.values.extend([0.0] * (length - len(self.values)))

    def place_next(self, position: int) -> float:
        """Put p_{r+1} at ``position`` (beyond the current end)."""
        if position <= len(self.values):
            raise InvalidParamsError(
                f"position {position} is not beyond the current length "
                f"{len(self.values)}"
            )
        self.r += 1
        value = prob_at(self.p, self.r)
        self.pad_to(position - 1)
        self.values.append(value)
        self.points.append(position)
        return value

    def place_next_nonzero(self, min_position: int) -> tuple[int, float]:
        """Consume p up to its next nonzero entry, placing it at >= min_position.

        Zero entries of p met on the way take the next free slots. Callers
        must know p has another nonzero entry.
        """
        while True:
            value = prob_at(self.p, self.r + 1)
            if value == 0.0:
                self.place_next(len(self.values) + 1)
                continue
            position = max(min_position, len(self.values) + 1)
            self.place_next(position)
            return position, value

    def build(self) -> ProbSeq:
        return ProbSeq.finite(self.values)

    def witness(self) -> StretchMap | None:
        if not self.points:
            return None
        return StretchMap(image_points=(*self.points, len(self.values) + 1))
