import random

import pytest

from dyncover.dynamizer import DELETE, INSERT, UpdateStep, dynamize
from dyncover.levels import LevelState
from dyncover.oracle import OracleBudget, naive_init, naive_update, opt_cover
from dyncover.setsystem import SetSystem
from dyncover.static_greedy import static_greedy

from conftest import exhaustive_opt, random_system


def test_fix1_optimum_is_two(fix1):
    assert opt_cover(fix1, range(4)) == 2
    assert exhaustive_opt(fix1, range(4)) == 2


def test_empty_universe(fix1):
    assert opt_cover(fix1, []) == 0


def test_singleton_universe(fix1):
    assert opt_cover(fix1, [3]) == 1


def test_budget_refusal():
    sys = SetSystem.from_sets(30, [[e] for e in range(30)] + [list(range(30))])
    with pytest.raises(ValueError, match="budget"):
        opt_cover(sys, range(30))
    with pytest.raises(ValueError, match="budget"):
        opt_cover(sys, range(21), OracleBudget(max_elements=25, max_sets=5))


def test_differential_against_exhaustive_enumeration():
    rng = random.Random(71)
    for _ in range(120):
        sys = random_system(rng, max_elements=14, max_sets=12)
        universe = rng.sample(range(sys.num_elements), rng.randint(0, sys.num_elements))
        assert opt_cover(sys, universe) == exhaustive_opt(sys, universe)


def test_naive_matches_fresh_greedy_every_step(fix1):
    state = naive_init(fix1, 2.0, 4)
    active = set()
    seq = [
        UpdateStep(INSERT, 0), UpdateStep(INSERT, 1), UpdateStep(INSERT, 2),
        UpdateStep(INSERT, 3), UpdateStep(DELETE, 3), UpdateStep(DELETE, 0),
    ]
    for step in seq:
        naive_update(state, step)
        if step.op == INSERT:
            active.add(step.element)
        else:
            active.remove(step.element)
        fresh = LevelState(fix1, 2.0, 4)
        candidates = sorted({t for e in active for t in fix1.incidence[e]})
        expected = static_greedy(fix1, active, candidates, 2.0, fresh)
        assert state.cover == expected


def test_naive_delete_e4_from_full_fix1(fix1):
    state = naive_init(fix1, 2.0, 4)
    for e in range(4):
        naive_update(state, UpdateStep(INSERT, e))
    naive_update(state, UpdateStep(DELETE, 3))
    assert state.cover == {0}


def test_naive_ends_empty(fix1):
    state = naive_init(fix1, 2.0, 4)
    for step in dynamize(fix1, 3).steps:
        naive_update(state, step)
    assert state.cover == set()
    assert state.active == set()


def test_naive_rejects_bad_steps(fix1):
    state = naive_init(fix1, 2.0, 4)
    naive_update(state, UpdateStep(INSERT, 0))
    with pytest.raises(ValueError, match="already active"):
        naive_update(state, UpdateStep(INSERT, 0))
    with pytest.raises(ValueError, match="not active"):
        naive_update(state, UpdateStep(DELETE, 1))
