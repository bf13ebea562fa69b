"""Chunked searches through a (possibly infinite) base sequence."""

from __future__ import annotations

from collections.abc import Callable

import numpy as np

from ..models import ProbSeq
from ..seq import probabilities

CHUNK = 1 << 16


def _window(p: ProbSeq, start: int, stop: int) -> np.ndarray:
    """p_start..p_{stop-1}."""
    return probabilities(p, stop - 1)[start - 1 :]


def scan_indices(
    p: ProbSeq,
    test: Callable[[np.ndarray], np.ndarray],
    count: int,
    limit: int,
    start: int = 1,
) -> list[int]:
    """First ``count`` indices l in [start, limit] whose value passes ``test``."""
    found: list[int] = []
    low = max(start, 1)
    while low <= limit and len(found) < count:
        high = min(low + CHUNK, limit + 1)
        hits = np.flatnonzero(test(_window(p, low, high))) + low
        found.extend(int(l) for l in hits[: count - len(found)])
        low = high
    return found


def is_one(values: np.ndarray) -> np.ndarray:
    return values >= 1.0


def is_fractional(values: np.ndarray) -> np.ndarray:
    return (values > 0.0) & (values < 1.0)


def next_one(p: ProbSeq, after: int, limit: int) -> int | None:
    """Smallest l > after with p_l = 1, or None within ``limit``."""
    hits = scan_indices(p, is_one, 1, limit, start=after + 1)
    return hits[0] if hits else None
