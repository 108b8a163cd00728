"""Interval-based maintainer: patch naively, rebuild every (beta-1)|C| steps.

Between rebuilds an uncovered insertion just pulls in an arbitrary
containing set and deletions leave the cover alone, so the solution can
drift; once the interval countdown hits zero the greedy recomputes the
cover from scratch and the next interval is sized from the fresh solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from dyncover.dynamizer import INSERT, UpdateStep
from dyncover.levels import LevelState
from dyncover.metrics import StepReport
from dyncover.setsystem import SetSystem
from dyncover.static_greedy import static_greedy


@dataclass
class RobustState:
    sys: SetSystem
    beta: float
    n_cap: int
    cover: set[int] = field(default_factory=set)
    active: set[int] = field(default_factory=set)
    r: int = 1
    base: LevelState | None = None  # populated only at rebuilds


def robust_init(sys: SetSystem, beta: float, n_cap: int) -> RobustState:
    if not 1 < beta < 2:
        raise ValueError("beta must lie in (1,2) for robust algorithm")
    return RobustState(sys=sys, beta=beta, n_cap=n_cap)


def _interval_length(beta: float, cover_size: int) -> int:
    # exact ceiling of (beta - 1) * |C|, floored at one step
    return max(1, math.ceil((Fraction(beta) - 1) * cover_size))


def robust_update(state: RobustState, step: UpdateStep) -> StepReport:
    before = set(state.cover)
    e = step.element
    if step.op == INSERT:
        if e in state.active:
            raise ValueError(f"element {e + 1} already active")
        state.active.add(e)
        containing = state.sys.incidence[e]
        if not any(t in state.cover for t in containing):
            state.cover.add(containing[0])
    else:
        if e not in state.active:
            raise ValueError(f"element {e + 1} not active")
        state.active.remove(e)

    state.r -= 1
    rebuild_fired = False
    if state.r == 0:
        rebuild_fired = True
        state.base = LevelState(state.sys, state.beta, state.n_cap)
        candidates = sorted({t for a in state.active for t in state.sys.incidence[a]})
        state.cover = static_greedy(
            state.sys, state.active, candidates, state.beta, state.base
        )
        state.r = _interval_length(state.beta, len(state.cover))

    return StepReport(
        cover_size=len(state.cover),
        recourse=len(before ^ state.cover),
        rebuild_fired=rebuild_fired,
    )
