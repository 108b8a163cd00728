"""Partial maintainer: PD sets cleaned locally, ND-ness tracked as dirt.

Every element that leaves a cov at level l charges beta**(-l) to a
per-level dirt counter. Once total dirt reaches ((beta-1)/beta) * |C| the
algorithm picks the critical level maximizing the dirt-to-cost ratio,
greedily rebuilds everything at or below it, and zeroes the counters up to
that level. Dirt is stored as integer event counts and compared through a
common-denominator scaling of beta's exact rational value, so the trigger
never drifts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from dyncover.algo_local import choose_insertion_set, clear_positive_dirty
from dyncover.dynamizer import INSERT, UpdateStep
from dyncover.levels import LevelState, rebuild_below
from dyncover.metrics import StepReport
from dyncover.setsystem import SetSystem


@dataclass
class PartialState:
    level: LevelState
    beta: float
    dirt_events: list[int]  # per-level count of elements that left a cov there
    dirt_weights: list[int]  # weight[j] = Q**j * P**(L+1-j) for beta = P/Q
    rhs_weight: int  # (P-Q) * P**L; trigger is dirt_scaled >= rhs_weight * |C|
    dirt_scaled: int = 0
    last_rebuilds: list[int] = field(default_factory=list)


def partial_init(sys: SetSystem, beta: float, n_cap: int, debug: bool = False) -> PartialState:
    level = LevelState(sys, beta, n_cap, debug=debug)
    frac = Fraction(beta)
    p, q = frac.numerator, frac.denominator
    cap = level.level_cap
    weights = [q**j * p ** (cap + 1 - j) for j in range(cap + 1)]
    return PartialState(
        level=level,
        beta=beta,
        dirt_events=[0] * (cap + 1),
        dirt_weights=weights,
        rhs_weight=(p - q) * p**cap,
    )


def dirt_total(state: PartialState) -> Fraction:
    """Total dirt recomputed from the integer event counts."""
    frac = Fraction(state.beta)
    return sum(
        (count * frac**-j for j, count in enumerate(state.dirt_events)),
        start=Fraction(0),
    )


def _add_dirt(state: PartialState, lev: int) -> None:
    state.dirt_events[lev] += 1
    state.dirt_scaled += state.dirt_weights[lev]


def find_critical_level(state: PartialState) -> int:
    """argmax over i of (dirt at levels <= i) / (1 + cover sets strictly
    below i), ties toward the highest i."""
    level = state.level
    per_level_cover = [0] * (level.level_cap + 2)
    for s in range(level.sys.num_sets):
        if level.set_level[s] >= 0:
            per_level_cover[level.set_level[s]] += 1
    best_i = 0
    best_num = 0
    best_den = 1
    prefix = 0
    below = 0
    for i in range(level.level_cap + 1):
        if i > 0:
            below += per_level_cover[i - 1]
        prefix += state.dirt_events[i] * state.dirt_weights[i]
        den = 1 + below
        # prefix/den >= best_num/best_den, ties replaced to prefer higher i
        if prefix * best_den >= best_num * den:
            best_i, best_num, best_den = i, prefix, den
    return best_i


def partial_update(state: PartialState, step: UpdateStep) -> StepReport:
    level = state.level
    level.begin_step()
    state.last_rebuilds = []
    e = step.element
    if step.op == INSERT:
        if e in level.active:
            raise ValueError(f"element {e + 1} already active")
        level.activate(e, choose_insertion_set(level, e))
        # every element whose level changed in a rise charges its old level
        _, _, changed = clear_positive_dirty(level, level.sys.incidence[e])
        for _, old in changed:
            _add_dirt(state, old)
    else:
        _, old = level.deactivate(e)
        _add_dirt(state, old)

    while state.dirt_scaled > 0 and state.dirt_scaled >= state.rhs_weight * level.cover_size:
        i_crit = find_critical_level(state)
        report = rebuild_below(level, i_crit)
        if report.raised:
            # impossible while no set is PD: greedy levels stay <= i_crit + 1
            raise RuntimeError("partial rebuild raised an untouched stratum")
        for j in range(i_crit + 1):
            state.dirt_scaled -= state.dirt_events[j] * state.dirt_weights[j]
            state.dirt_events[j] = 0
        state.last_rebuilds.append(i_crit)

    return StepReport(
        cover_size=level.cover_size,
        recourse=level.step_recourse(),
        rebuild_fired=bool(state.last_rebuilds),
    )
