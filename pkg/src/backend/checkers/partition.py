"""Symmetric partitions of a circle's step sequence."""

from __future__ import annotations

from collections.abc import Sequence

from ..errors import InvalidParamsError


def symmetric_partition(deltas: Sequence[int]) -> tuple[list[int], list[int]]:
    """Split indices into canceling pairs S and the rest A, first-fit.

    Index i is paired with the smallest later unpaired j with
    deltas[i] + deltas[j] == 0, so no two indices left in A cancel.
    """
    values = [int(d) for d in deltas]
    if any(d == 0 for d in values):
        raise InvalidParamsError(f"deltas must be nonzero: {values}")
    paired = [False] * len(values)
    for i, d in enumerate(values):
        if paired[i]:
            continue
        for j in range(i + 1, len(values)):
            if not paired[j] and values[j] == -d:
                paired[i] = paired[j] = True
                break
    s = [i for i, flag in enumerate(paired) if flag]
    a = [i for i, flag in enumerate(paired) if not flag]
    return s, a
