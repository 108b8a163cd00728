"""Ground truth at desk scale: exact optimum and the rebuild-every-step baseline."""

from __future__ import annotations

from dataclasses import dataclass, field

from dyncover.dynamizer import INSERT, UpdateStep
from dyncover.levels import LevelState
from dyncover.metrics import StepReport
from dyncover.setsystem import SetSystem
from dyncover.static_greedy import static_greedy


@dataclass(frozen=True)
class OracleBudget:
    """Hard size caps; the solver refuses rather than approximate."""

    max_elements: int = 20
    max_sets: int = 24


def opt_cover(
    sys: SetSystem, universe, budget: OracleBudget = OracleBudget()
) -> int:
    """Exact minimum number of sets covering `universe`, by branch and bound.

    Branches on an uncovered element with the fewest containing sets and
    prunes against the incumbent, seeded with the classic greedy bound.
    """
    elems = sorted(set(universe))
    if not elems:
        return 0
    if len(elems) > budget.max_elements:
        raise ValueError(
            f"universe of {len(elems)} exceeds oracle budget {budget.max_elements}"
        )
    candidates = sorted({t for e in elems for t in sys.incidence[e]})
    if len(candidates) > budget.max_sets:
        raise ValueError(
            f"{len(candidates)} candidate sets exceed oracle budget {budget.max_sets}"
        )

    index = {e: i for i, e in enumerate(elems)}
    masks: dict[int, int] = {t: 0 for t in candidates}
    for e in elems:
        for t in sys.incidence[e]:
            masks[t] |= 1 << index[e]
    full = (1 << len(elems)) - 1

    # branching order: elements by how few sets contain them
    elem_order = sorted(range(len(elems)), key=lambda i: len(sys.incidence[elems[i]]))
    covering = {
        i: sorted(
            (t for t in sys.incidence[elems[i]]),
            key=lambda t: -bin(masks[t]).count("1"),
        )
        for i in range(len(elems))
    }

    best = _greedy_bound(masks, full)
    max_mask_bits = max(bin(m).count("1") for m in masks.values())

    def search(covered: int, used: int) -> None:
        nonlocal best
        if covered == full:
            if used < best:
                best = used
            return
        missing = bin(full & ~covered).count("1")
        if used + (missing + max_mask_bits - 1) // max_mask_bits >= best:
            return
        target = next(i for i in elem_order if not covered & (1 << i))
        for t in covering[target]:
            search(covered | masks[t], used + 1)

    search(0, 0)
    return best


def _greedy_bound(masks: dict[int, int], full: int) -> int:
    covered = 0
    used = 0
    while covered != full:
        gain, pick = max(
            ((bin(m & ~covered).count("1"), t) for t, m in masks.items()),
            key=lambda item: (item[0], -item[1]),
        )
        covered |= masks[pick]
        used += 1
        if gain == 0:
            raise ValueError("universe cannot be covered")
    return used


@dataclass
class NaiveState:
    """Baseline that reruns the static greedy after every update."""

    sys: SetSystem
    beta: float
    n_cap: int
    active: set[int] = field(default_factory=set)
    cover: set[int] = field(default_factory=set)
    level: LevelState | None = None


def naive_init(sys: SetSystem, beta: float, n_cap: int) -> NaiveState:
    return NaiveState(sys=sys, beta=beta, n_cap=n_cap)


def naive_update(state: NaiveState, step: UpdateStep) -> StepReport:
    e = step.element
    if step.op == INSERT:
        if e in state.active:
            raise ValueError(f"element {e + 1} already active")
        state.active.add(e)
    else:
        if e not in state.active:
            raise ValueError(f"element {e + 1} not active")
        state.active.remove(e)
    before = state.cover
    state.level = LevelState(state.sys, state.beta, state.n_cap)
    candidates = sorted({t for a in state.active for t in state.sys.incidence[a]})
    state.cover = static_greedy(
        state.sys, state.active, candidates, state.beta, state.level
    )
    return StepReport(
        cover_size=len(state.cover),
        recourse=len(before ^ state.cover),
        rebuild_fired=True,
    )
