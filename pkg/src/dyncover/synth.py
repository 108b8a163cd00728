"""Synthetic desk-scale instances for experiments and trend checks."""

from __future__ import annotations

from bisect import bisect_left

from dyncover.dynamizer import SplitMix64
from dyncover.setsystem import SetSystem


def synthetic_system(
    num_elements: int,
    seed: int,
    num_sets: int = 300,
    membership: int = 3,
    skew: float = 1.3,
) -> SetSystem:
    """Size-skewed family: every element joins `membership` distinct sets
    drawn with probability proportional to (set id + 1) ** -skew, giving a
    few huge sets and a long tail of small ones. Frequency is `membership`.
    """
    if num_elements < 1:
        raise ValueError("no elements")
    if num_sets < membership:
        raise ValueError("need at least as many sets as memberships per element")
    rng = SplitMix64(seed)
    cumulative: list[float] = []
    total = 0.0
    for j in range(num_sets):
        total += (j + 1) ** -skew
        cumulative.append(total)
    incidence: list[list[int]] = []
    for _ in range(num_elements):
        row: set[int] = set()
        while len(row) < membership:
            u = (rng.next_u64() >> 11) / (1 << 53) * total
            row.add(bisect_left(cumulative, u))
        incidence.append(sorted(row))
    return SetSystem.from_incidence(num_sets, incidence)
