"""Global maintainer: both properties relaxed through per-level counters.

Each element carries a monotone passive level plev >= lev. Per level i,
A_i counts clean elements (lev <= i < plev), P_i counts passively placed
ones (plev <= i), and D_i counts deletions that happened at or below i.
Whenever P_i + D_i exceeds 2(beta-1) * A_i anywhere, the highest violating
level is rebuilt greedily and every participating element is promoted past
it. Insertions do no PD handling at all; that slack is what P_i absorbs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from dyncover.algo_local import choose_insertion_set
from dyncover.dynamizer import INSERT, UpdateStep
from dyncover.levels import LevelState, rebuild_below
from dyncover.metrics import StepReport
from dyncover.setsystem import SetSystem


@dataclass
class GlobalState:
    level: LevelState
    beta: float
    plev: list[int]
    clean: list[int]  # A_i
    passive: list[int]  # P_i
    dirt: list[int]  # D_i
    # invariant scaled to integers: q*(P_i + D_i) <= 2(p-q)*A_i for beta = p/q
    q_scale: int
    rhs_scale: int
    last_rebuilds: list[int] = field(default_factory=list)


def global_init(sys: SetSystem, beta: float, n_cap: int, debug: bool = False) -> GlobalState:
    level = LevelState(sys, beta, n_cap, debug=debug)
    frac = Fraction(beta)
    size = level.level_cap + 1
    return GlobalState(
        level=level,
        beta=beta,
        plev=[0] * sys.num_elements,
        clean=[0] * size,
        passive=[0] * size,
        dirt=[0] * size,
        q_scale=frac.denominator,
        rhs_scale=2 * (frac.numerator - frac.denominator),
    )


def _highest_violation(state: GlobalState) -> int | None:
    worst = None
    for i in range(state.level.level_cap + 1):
        lhs = state.q_scale * (state.passive[i] + state.dirt[i])
        if lhs > state.rhs_scale * state.clean[i]:
            worst = i
    return worst


def recompute_counters(state: GlobalState) -> tuple[list[int], list[int]]:
    """A and P rebuilt from scratch from (lev, plev); the validator's oracle."""
    size = state.level.level_cap + 1
    clean = [0] * size
    passive = [0] * size
    for e in state.level.active:
        lev = state.level.elem_level[e]
        pl = state.plev[e]
        for i in range(lev, min(pl, size)):
            clean[i] += 1
        for i in range(pl, size):
            passive[i] += 1
    return clean, passive


def global_update(state: GlobalState, step: UpdateStep) -> StepReport:
    level = state.level
    cap = level.level_cap
    level.begin_step()
    state.last_rebuilds = []
    e = step.element
    if step.op == INSERT:
        if e in level.active:
            raise ValueError(f"element {e + 1} already active")
        level.activate(e, choose_insertion_set(level, e))
        lev = level.elem_level[e]
        state.plev[e] = lev
        for i in range(lev, cap + 1):
            state.passive[i] += 1
    else:
        if e not in level.active:
            raise ValueError(f"element {e + 1} not active")
        lev = level.elem_level[e]
        pl = state.plev[e]
        for i in range(lev, min(pl, cap + 1)):
            state.clean[i] -= 1
            state.dirt[i] += 1
        for i in range(pl, cap + 1):
            state.passive[i] -= 1
            state.dirt[i] += 1
        level.deactivate(e)

    while (i_crit := _highest_violation(state)) is not None:
        report = rebuild_below(level, i_crit)
        diff_clean = [0] * (cap + 3)
        diff_passive = [0] * (cap + 3)

        def retag(element: int, old_lev: int, new_plev: int) -> None:
            old_plev = state.plev[element]
            diff_clean[old_lev] -= 1
            diff_clean[old_plev] += 1
            diff_passive[old_plev] -= 1
            state.plev[element] = new_plev
            new_lev = level.elem_level[element]
            diff_clean[new_lev] += 1
            diff_clean[new_plev] -= 1
            diff_passive[new_plev] += 1

        for element, old_lev in report.rebuilt:
            retag(
                element,
                old_lev,
                max(state.plev[element], i_crit + 1, level.elem_level[element]),
            )
        for element, old_lev in report.raised:
            # merge-raised bystanders keep plev >= lev without the i_crit bump
            retag(element, old_lev, max(state.plev[element], level.elem_level[element]))

        run_clean = 0
        run_passive = 0
        for i in range(cap + 1):
            run_clean += diff_clean[i]
            state.clean[i] += run_clean
            run_passive += diff_passive[i]
            state.passive[i] += run_passive
        for i in range(i_crit + 1):
            state.dirt[i] = 0
        state.last_rebuilds.append(i_crit)

    return StepReport(
        cover_size=level.cover_size,
        recourse=level.step_recourse(),
        rebuild_fired=bool(state.last_rebuilds),
    )
