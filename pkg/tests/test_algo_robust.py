import math
import random
from fractions import Fraction

import pytest

from dyncover.algo_robust import robust_init, robust_update
from dyncover.dynamizer import DELETE, INSERT, UpdateStep
from dyncover.oracle import opt_cover
from dyncover.setsystem import SetSystem

from conftest import covers, fuzz_steps, random_system


def test_init_valid_betas(fix1):
    state = robust_init(fix1, 1.5, 4)
    assert state.cover == set()
    assert state.r == 1
    robust_init(fix1, 1.99, 4)
    robust_init(fix1, 1.495, 4)


def test_init_rejects_beta_outside_open_interval(fix1):
    with pytest.raises(ValueError, match=r"beta must lie in \(1,2\)"):
        robust_init(fix1, 2.5, 4)
    with pytest.raises(ValueError):
        robust_init(fix1, 2.0, 4)
    with pytest.raises(ValueError):
        robust_init(fix1, 1.0, 4)


def test_first_insert_hand_simulation(fix1):
    # insert e1: patched with s1, countdown hits 0, rebuild keeps {s1}, r=1
    state = robust_init(fix1, 1.5, 4)
    report = robust_update(state, UpdateStep(INSERT, 0))
    assert state.cover == {0}
    assert state.r == 1
    assert report.rebuild_fired
    assert report.cover_size == 1
    assert report.recourse == 1


def test_deletion_mid_interval_leaves_cover_alone(fix1):
    state = robust_init(fix1, 1.9, 4)
    robust_update(state, UpdateStep(INSERT, 0))  # rebuild, r becomes 1
    robust_update(state, UpdateStep(INSERT, 3))  # rebuild again, r >= 1
    state.r = 5  # force a long interval so nothing rebuilds below
    before = set(state.cover)
    report = robust_update(state, UpdateStep(DELETE, 3))
    assert state.cover == before
    assert report.recourse == 0
    assert not report.rebuild_fired


def test_rebuild_replacing_cover_counts_symmetric_difference():
    # the step starts at {s1}, patches in s2, and the rebuild swaps both for
    # s3: recourse is the endpoint difference |{s1} ^ {s3}| = 2
    sys = SetSystem.from_sets(2, [[0], [1], [0, 1]])
    state = robust_init(sys, 1.5, 2)
    report = robust_update(state, UpdateStep(INSERT, 0))
    assert state.cover == {0} and state.r == 1
    report = robust_update(state, UpdateStep(INSERT, 1))
    assert report.rebuild_fired
    assert state.cover == {2}
    assert report.recourse == len({0} ^ {2}) == 2


def test_duplicate_insert_and_phantom_delete(fix1):
    state = robust_init(fix1, 1.5, 4)
    robust_update(state, UpdateStep(INSERT, 0))
    with pytest.raises(ValueError, match="already active"):
        robust_update(state, UpdateStep(INSERT, 0))
    with pytest.raises(ValueError, match="not active"):
        robust_update(state, UpdateStep(DELETE, 2))


def test_interval_arithmetic_and_bound_fuzz():
    rng = random.Random(17)
    for trial in range(25):
        sys = random_system(rng, max_elements=14, max_sets=8)
        beta = rng.choice([1.5, 1.9])
        state = robust_init(sys, beta, sys.num_elements)
        expected_r = 1
        size_growth_watch = None
        for step in fuzz_steps(rng, sys.num_elements, 80):
            before = len(state.cover)
            report = robust_update(state, step)
            # cover grows by at most one between rebuilds
            if not report.rebuild_fired:
                assert report.cover_size <= before + 1
            expected_r -= 1
            if expected_r == 0:
                assert report.rebuild_fired
                expected_r = max(
                    1, math.ceil((Fraction(beta) - 1) * report.cover_size)
                )
            else:
                assert not report.rebuild_fired
            assert state.r == expected_r
            assert covers(state.active, state.cover, sys)
            if state.active:
                opt = opt_cover(sys, state.active)
                bound = (beta**2 / (2 - beta)) * (math.log(sys.num_elements) + 1) * opt
                assert len(state.cover) <= bound + 1e-9
