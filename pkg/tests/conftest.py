"""Shared fixtures and independent oracles for the test suite."""

from __future__ import annotations

import random
from itertools import combinations

import pytest

from dyncover.setsystem import SetSystem, load_instance

FIX1_TEXT = "4 3\n1\n1\n1 2\n2 3\n"


@pytest.fixture
def fix1() -> SetSystem:
    # s1={e1,e2,e3}, s2={e3,e4}, s3={e4} in 1-based file ids
    return load_instance(FIX1_TEXT)


def random_system(rng: random.Random, max_elements: int = 20, max_sets: int = 10) -> SetSystem:
    """Random instance where every element joins at least two sets (f >= 2)."""
    num_elements = rng.randint(2, max_elements)
    num_sets = rng.randint(2, max_sets)
    incidence = []
    for _ in range(num_elements):
        k = rng.randint(2, min(4, num_sets))
        incidence.append(sorted(rng.sample(range(num_sets), k)))
    return SetSystem.from_incidence(num_sets, incidence)


def exhaustive_opt(sys: SetSystem, universe) -> int:
    """Minimum cover size by subset enumeration; only for small families."""
    universe = set(universe)
    if not universe:
        return 0
    candidates = sorted({t for e in universe for t in sys.incidence[e]})
    assert len(candidates) <= 16, "exhaustive oracle is for small families"
    for size in range(1, len(candidates) + 1):
        for combo in combinations(candidates, size):
            covered = set()
            for t in combo:
                covered.update(sys.sets[t])
            if universe <= covered:
                return size
    raise AssertionError("universe cannot be covered")


def brute_nj(state, s: int, j: int) -> int:
    """|{e in s, active, lev(e) < j}| by direct scan."""
    return sum(
        1
        for e in state.sys.sets[s]
        if e in state.active and state.elem_level[e] < j
    )


def covers(state_active, cover, sys: SetSystem) -> bool:
    return all(any(t in cover for t in sys.incidence[e]) for e in state_active)


def fuzz_steps(rng: random.Random, num_elements: int, count: int):
    """Random insert/delete walk over a pool of re-insertable elements."""
    from dyncover.dynamizer import DELETE, INSERT, UpdateStep

    active: list[int] = []
    steps = []
    for _ in range(count):
        can_insert = len(active) < num_elements
        if active and (not can_insert or rng.random() < 0.45):
            e = active.pop(rng.randrange(len(active)))
            steps.append(UpdateStep(DELETE, e))
        else:
            pool = sorted(set(range(num_elements)) - set(active))
            e = rng.choice(pool)
            active.append(e)
            steps.append(UpdateStep(INSERT, e))
    return steps
