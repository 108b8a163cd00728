"""Local maintainer: no negative-dirty and no positive-dirty sets, ever.

A set is negative dirty (ND) when its cov shrank below beta**(lev-1), and
positive dirty w.r.t. j (j-PD) when it holds at least beta**(j+1) active
elements strictly below level j. Updates restore the invariant through
alternating rising and falling phases: rising lifts PD sets (claiming the
low elements that made them dirty), falling drops ND sets to the level
their cov still supports. Each phase hands the sets it disturbed to the
other, and the top rising level strictly decreases, which bounds the
cascade.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from dyncover.dynamizer import INSERT, UpdateStep
from dyncover.levels import EMPTY_LEVEL, LevelState
from dyncover.metrics import StepReport
from dyncover.setsystem import SetSystem


@dataclass
class LocalState:
    level: LevelState
    beta: float
    # top PD level of each rising phase in the latest update, for the
    # termination descent check
    last_rising_peaks: list[int] = field(default_factory=list)


def local_init(sys: SetSystem, beta: float, n_cap: int, debug: bool = False) -> LocalState:
    return LocalState(level=LevelState(sys, beta, n_cap, debug=debug), beta=beta)


def choose_insertion_set(level: LevelState, e: int) -> int:
    """Containing set of maximum level; ties and the all-empty case go to
    the lowest id (which then opens at level 0)."""
    best = -1
    best_lev = -2
    for t in level.sys.incidence[e]:
        if level.set_level[t] > best_lev:
            best_lev = level.set_level[t]
            best = t
    return best


def pd_peak(level: LevelState, s: int) -> int | None:
    """Highest j such that s is j-PD, or None."""
    prefix = 0
    best = None
    row = level.level_hist[s]
    for j in range(level.level_cap + 1):
        if prefix >= level.ceil_pow[j + 1]:
            best = j
        prefix += row[j]
    return best


def _rise(level: LevelState, s: int, j: int) -> tuple[set[int], list[tuple[int, int]]]:
    """Lift s, claiming every active member strictly below level j.

    The target is j+1 for an upward rise; a set already sitting higher
    absorbs the low elements at its own level instead of being demoted.
    Returns (owners that lost elements, every element whose level changed
    with its previous level).
    """
    target = max(j + 1, level.set_level[s])
    stolen = [
        e
        for e in level.sys.sets[s]
        if e in level.active and level.elem_level[e] < j and level.asn[e] != s
    ]
    owners: set[int] = set()
    changed: list[tuple[int, int]] = []
    if not level.cov[s]:
        level._flip(s, +1)
    level.set_level[s] = target
    for e in list(level.cov[s]):
        if level.elem_level[e] != target:
            changed.append((e, level.elem_level[e]))
            level._change_elem_level(e, target)
    for e in stolen:
        t = level.asn[e]
        level.cov[t].remove(e)
        owners.add(t)
        if not level.cov[t]:
            level.set_level[t] = EMPTY_LEVEL
            level._flip(t, -1)
        level.asn[e] = s
        level.cov[s].add(e)
        changed.append((e, level.elem_level[e]))
        level._change_elem_level(e, target)
    return owners, changed


def clear_positive_dirty(
    level: LevelState, sets: Iterable[int]
) -> tuple[set[int], int | None, list[tuple[int, int]]]:
    """Rise PD sets among `sets`, highest dirty level first (ties to the
    lowest id), until none is PD. Rising only shrinks N_j counts, so no set
    outside `sets` can become dirty here."""
    candidates = set(sets)
    owners: set[int] = set()
    changed: list[tuple[int, int]] = []
    first_peak: int | None = None
    while True:
        best_j = None
        best_s = None
        for s in sorted(candidates):
            j = pd_peak(level, s)
            if j is not None and (best_j is None or j > best_j):
                best_j, best_s = j, s
        if best_j is None:
            return owners, first_peak, changed
        if first_peak is None:
            first_peak = best_j
        got_owners, got_changed = _rise(level, best_s, best_j)
        owners |= got_owners
        changed.extend(got_changed)


def rising_phase(state: LocalState, sets: Iterable[int]) -> set[int]:
    """Clean PD sets; returns the previous owners of reassigned elements."""
    owners, peak, _ = clear_positive_dirty(state.level, sets)
    if peak is not None:
        state.last_rising_peaks.append(peak)
    return owners


def falling_phase(state: LocalState, sets: Iterable[int]) -> set[int]:
    """Drop ND sets to the level their cov supports; returns every set
    containing a dropped element."""
    level = state.level
    out: set[int] = set()
    for s in sorted(set(sets)):
        if not level.cov[s]:
            continue  # emptied owners already left the cover at level -1
        size = len(level.cov[s])
        exp = level.set_level[s] - 1
        if exp < 0 or size >= level.ceil_pow[exp]:
            continue
        new = level.floor_log(size)
        level.set_level[s] = new
        for e in list(level.cov[s]):
            level._change_elem_level(e, new)
        for e in level.cov[s]:
            out.update(level.sys.incidence[e])
    return out


def local_update(state: LocalState, step: UpdateStep) -> StepReport:
    level = state.level
    level.begin_step()
    state.last_rising_peaks = []
    e = step.element
    if step.op == INSERT:
        if e in level.active:
            raise ValueError(f"element {e + 1} already active")
        level.activate(e, choose_insertion_set(level, e))
        to_rise: set[int] | None = set(level.sys.incidence[e])
        to_fall: set[int] | None = None
    else:
        owner, _ = level.deactivate(e)
        to_rise = None
        to_fall = {owner}
    while to_rise or to_fall:
        if to_rise:
            to_fall = rising_phase(state, to_rise)
            to_rise = None
        else:
            to_rise = falling_phase(state, to_fall)
            to_fall = None
    return StepReport(cover_size=level.cover_size, recourse=level.step_recourse())
