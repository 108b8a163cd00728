"""Level-bucketed relaxed greedy: the subroutine every maintainer calls.

Sets are bucketed by floor(log_beta |s ∩ E|) and scanned from the top level
down. A set still holding beta**l uncovered elements is taken at level l
with all of them; otherwise it drops straight to the highest level its
remaining count supports. Within a level, sets are processed in ascending
id order; demoted sets land in lower buckets, which are sorted when their
level is reached.
"""

from __future__ import annotations

from typing import Iterable

from dyncover.levels import LevelState
from dyncover.setsystem import SetSystem


def static_greedy(
    sys: SetSystem,
    elements: Iterable[int],
    candidates: Iterable[int],
    beta: float,
    state: LevelState,
    stats: dict | None = None,
) -> set[int]:
    """Run the greedy over `elements` with `candidates` and populate `state`.

    Elements must be inactive in `state` (they are activated as they are
    assigned). Returns the candidate sets that end up with nonempty cov.
    Optional `stats` receives set_touches, assigned_sets and raised.
    """
    if beta != state.beta:
        raise ValueError("beta does not match the state thresholds")
    if stats is None:
        stats = {}
    stats["set_touches"] = 0
    stats["assigned_sets"] = []
    stats["raised"] = []

    pool = sorted(set(elements))
    if not pool:
        return set()
    if len(pool) > state.n_cap:
        raise ValueError(
            f"{len(pool)} elements exceed the state capacity {state.n_cap}"
        )
    cand = set(candidates)
    remaining: dict[int, set[int]] = {}
    for e in pool:
        if e in state.active:
            raise ValueError(f"element {e + 1} already active")
        hit = False
        for t in sys.incidence[e]:
            if t in cand:
                remaining.setdefault(t, set()).add(e)
                hit = True
        if not hit:
            raise ValueError(f"element {e + 1} cannot be covered by the candidates")

    start = state.ceil_log(len(pool))
    buckets: list[list[int]] = [[] for _ in range(start + 1)]
    for t in sorted(remaining):
        buckets[state.floor_log(len(remaining[t]))].append(t)

    for level in range(start, -1, -1):
        queue = buckets[level]
        queue.sort()
        idx = 0
        while idx < len(queue):
            t = queue[idx]
            idx += 1
            stats["set_touches"] += 1
            size = len(remaining[t])
            if size >= state.ceil_pow[level]:
                taken = sorted(remaining[t])
                _assign(state, t, taken, level, stats)
                for e in taken:
                    for t2 in sys.incidence[e]:
                        if t2 != t and t2 in remaining:
                            remaining[t2].discard(e)
                remaining[t].clear()
            elif size > 0:
                buckets[state.floor_log(size)].append(t)
            # size 0: the set is spent, conceptually at level -1

    return {t for t in cand if state.cov[t]}


def _assign(state: LevelState, t: int, taken: list[int], level: int, stats: dict) -> None:
    # A candidate holding a cov from an earlier pass keeps the higher of the
    # two levels, and every merged element adopts it.
    if state.cov[t]:
        final = max(state.set_level[t], level)
        if final != state.set_level[t]:
            state.set_level[t] = final
            for e in list(state.cov[t]):
                stats["raised"].append((e, state.elem_level[e]))
                state._change_elem_level(e, final)
    else:
        final = level
        state.set_level[t] = final
        state._flip(t, +1)
    for e in taken:
        state.activate_at(e, t, final)
    stats["assigned_sets"].append(t)
