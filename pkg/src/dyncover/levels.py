"""Shared level bookkeeping used by every dynamic maintainer.

A LevelState tracks which set covers each active element (cov and its
inverse asn), the level of every covering set, and per-set histograms of
member-element levels. All beta-power comparisons go through integer
thresholds precomputed with exact rational arithmetic, so hot paths never
compare against floating-point powers.

Conventions: a set with empty cov sits at level -1 and is outside the
cover; an integer count c satisfies "c >= beta**l" iff c >= ceil(beta**l),
and "c < beta**l" iff c < ceil(beta**l).
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction

from dyncover.setsystem import SetSystem

NO_SET = -1
EMPTY_LEVEL = -1


def power_thresholds(beta: float, max_exp: int) -> tuple[list[int], list[int]]:
    """ceil(beta**l) and floor(beta**l) for l in 0..max_exp.

    Exact for the binary value of beta (Fraction arithmetic, no drift).
    """
    b = Fraction(beta)
    if b <= 1:
        raise ValueError("beta must exceed 1")
    ceil_pow: list[int] = []
    floor_pow: list[int] = []
    p = Fraction(1)
    for _ in range(max_exp + 1):
        ceil_pow.append(math.ceil(p))
        floor_pow.append(math.floor(p))
        p *= b
    return ceil_pow, floor_pow


def level_of_size(count: int, beta: float) -> int:
    """floor(log_beta(count)): the largest l with beta**l <= count."""
    if count < 1:
        raise ValueError("count must be positive; empty cov uses level -1")
    b = Fraction(beta)
    if b <= 1:
        raise ValueError("beta must exceed 1")
    level = 0
    p = b
    while p <= count:
        level += 1
        p *= b
    return level


def level_cap_for(n_cap: int, beta: float) -> int:
    """ceil(log_beta(n_cap)): the smallest l with beta**l >= n_cap."""
    if n_cap < 1:
        raise ValueError("capacity must be at least 1")
    b = Fraction(beta)
    if b <= 1:
        raise ValueError("beta must exceed 1")
    level = 0
    p = Fraction(1)
    while p < n_cap:
        level += 1
        p *= b
    return level


@dataclass
class PropertyReport:
    """Outcome of the two cover-quality property checks."""

    property1_violations: list[tuple[int, int, int]]
    property2_violations: list[tuple[int, int, int]]

    @property
    def passed(self) -> bool:
        return not self.property1_violations and not self.property2_violations


@dataclass
class RebuildReport:
    elements_rebuilt: int
    sets_touched: list[int]
    # bookkeeping for callers that track per-element metadata
    rebuilt: list[tuple[int, int]] = field(default_factory=list)  # (element, old level)
    raised: list[tuple[int, int]] = field(default_factory=list)  # merge-raised, non-rebuilt


class LevelState:
    """Mutable cov/asn/lev structure for one experiment run.

    level_cap derives from the declared sequence capacity, not the live
    universe size, so histogram rows stay fixed-size for the whole run.
    """

    def __init__(self, sys: SetSystem, beta: float, n_cap: int, debug: bool = False):
        self.sys = sys
        self.beta = beta
        self.beta_frac = Fraction(beta)
        if self.beta_frac <= 1:
            raise ValueError("beta must exceed 1")
        self.n_cap = n_cap
        self.level_cap = level_cap_for(n_cap, beta)
        self.ceil_pow, self.floor_pow = power_thresholds(beta, self.level_cap + 1)
        m = sys.num_sets
        self.active: set[int] = set()
        self.asn: list[int] = [NO_SET] * sys.num_elements
        self.elem_level: list[int] = [0] * sys.num_elements
        self.cov: list[set[int]] = [set() for _ in range(m)]
        self.set_level: list[int] = [EMPTY_LEVEL] * m
        self.level_hist: list[list[int]] = [[0] * (self.level_cap + 1) for _ in range(m)]
        self.cover_size = 0
        self.debug = debug
        self._flips: dict[int, int] = {}

    # -- threshold helpers -------------------------------------------------

    def floor_log(self, count: int) -> int:
        """floor(log_beta(count)) via the precomputed thresholds."""
        if count < 1:
            raise ValueError("count must be positive")
        return bisect_right(self.ceil_pow, count) - 1

    def ceil_log(self, count: int) -> int:
        """ceil(log_beta(count)) via the precomputed thresholds."""
        if count < 1:
            raise ValueError("count must be positive")
        return bisect_left(self.floor_pow, count)

    # -- per-step recourse tracking ----------------------------------------

    def begin_step(self) -> None:
        self._flips.clear()

    def step_recourse(self) -> int:
        """Sets whose cover membership differs from the start of the step."""
        return sum(1 for v in self._flips.values() if v != 0)

    def _flip(self, s: int, delta: int) -> None:
        self.cover_size += delta
        self._flips[s] = self._flips.get(s, 0) + delta

    # -- element mutations --------------------------------------------------

    def _change_elem_level(self, e: int, new: int) -> None:
        old = self.elem_level[e]
        if old == new:
            return
        for t in self.sys.incidence[e]:
            row = self.level_hist[t]
            row[old] -= 1
            row[new] += 1
        self.elem_level[e] = new

    def activate(self, e: int, s: int) -> None:
        """Insert e into cov(s); an empty s opens at level 0."""
        if e in self.active:
            raise ValueError(f"element {e + 1} already active")
        if not self.cov[s]:
            self.set_level[s] = 0
            self._flip(s, +1)
        lev = self.set_level[s]
        self.active.add(e)
        self.asn[e] = s
        self.cov[s].add(e)
        self.elem_level[e] = lev
        for t in self.sys.incidence[e]:
            self.level_hist[t][lev] += 1

    def activate_at(self, e: int, s: int, lev: int) -> None:
        """Greedy assignment path: e joins cov(s) at an explicit level."""
        self.active.add(e)
        self.asn[e] = s
        self.cov[s].add(e)
        self.elem_level[e] = lev
        for t in self.sys.incidence[e]:
            self.level_hist[t][lev] += 1

    def deactivate(self, e: int) -> tuple[int, int]:
        """Remove e; returns its former (owner set, level)."""
        if e not in self.active:
            raise ValueError(f"element {e + 1} not active")
        s = self.asn[e]
        lev = self.elem_level[e]
        for t in self.sys.incidence[e]:
            self.level_hist[t][lev] -= 1
        self.cov[s].remove(e)
        if not self.cov[s]:
            self.set_level[s] = EMPTY_LEVEL
            self._flip(s, -1)
        self.active.remove(e)
        self.asn[e] = NO_SET
        return s, lev

    # -- validation ----------------------------------------------------------

    def validate(self) -> None:
        """Recompute asn/hist/cover from cov and compare; raises on mismatch."""
        sys = self.sys
        seen: set[int] = set()
        for s in range(sys.num_sets):
            members = self.cov[s]
            if members and self.set_level[s] < 0:
                raise ValueError(f"set {s} has cov but level -1")
            if not members and self.set_level[s] != EMPTY_LEVEL:
                raise ValueError(f"set {s} empty but at level {self.set_level[s]}")
            for e in members:
                if e in seen:
                    raise ValueError(f"element {e} covered twice")
                seen.add(e)
                if self.asn[e] != s:
                    raise ValueError(f"asn({e}) != owner {s}")
                if e not in sys.sets[s]:
                    raise ValueError(f"element {e} not a member of its owner {s}")
                if self.elem_level[e] != self.set_level[s]:
                    raise ValueError(f"element {e} level differs from owner level")
        if seen != self.active:
            raise ValueError("cov union differs from active universe")
        hist = [[0] * (self.level_cap + 1) for _ in range(sys.num_sets)]
        for e in self.active:
            for t in sys.incidence[e]:
                hist[t][self.elem_level[e]] += 1
        if hist != self.level_hist:
            raise ValueError("level histograms out of sync")
        if self.cover_size != sum(1 for s in range(sys.num_sets) if self.cov[s]):
            raise ValueError("cover size counter out of sync")


def nj_count(state: LevelState, s: int, j: int) -> int:
    """|{e in s, active, lev(e) < j}| from the histogram prefix."""
    if not 0 <= j <= state.level_cap:
        raise ValueError(f"level {j} outside [0, {state.level_cap}]")
    return sum(state.level_hist[s][:j])


def cover_of(state: LevelState) -> set[int]:
    """All sets with nonempty cov; covers every active element."""
    return {s for s in range(state.sys.num_sets) if state.cov[s]}


def check_properties(
    state: LevelState, beta: float, slack_nd: int, slack_pd: int
) -> PropertyReport:
    """Check |cov(s)| >= beta**(lev(s)-slack_nd) for covering sets and
    |N_j(s)| < beta**(j+slack_pd) for every set and level; list violations."""
    if beta == state.beta:
        ceil_pow = state.ceil_pow
    else:
        ceil_pow, _ = power_thresholds(beta, state.level_cap + 1)
    p1: list[tuple[int, int, int]] = []
    p2: list[tuple[int, int, int]] = []
    for s in range(state.sys.num_sets):
        if state.cov[s]:
            lev = state.set_level[s]
            exp = lev - slack_nd
            if exp >= 0 and len(state.cov[s]) < ceil_pow[exp]:
                p1.append((s, len(state.cov[s]), lev))
        prefix = 0
        row = state.level_hist[s]
        for j in range(state.level_cap + 1):
            if prefix >= ceil_pow[j + slack_pd]:
                p2.append((s, j, prefix))
            prefix += row[j]
    return PropertyReport(p1, p2)


def rebuild_below(state: LevelState, i_crit: int, beta: float | None = None) -> RebuildReport:
    """Tear down every stratum at or below i_crit and greedily rebuild it.

    Elements at levels <= i_crit are detached, sets at those levels cleared,
    and the greedy reruns over the detached elements with every intersecting
    set as a candidate. A candidate that kept a cov above i_crit absorbs its
    newly assigned elements at max(old level, greedy level).
    """
    from dyncover.static_greedy import static_greedy

    if beta is not None and beta != state.beta:
        raise ValueError("beta does not match the state thresholds")
    if not 0 <= i_crit <= state.level_cap:
        raise ValueError(f"critical level {i_crit} outside [0, {state.level_cap}]")

    rebuilt = sorted(
        (e for e in state.active if state.elem_level[e] <= i_crit)
    )
    rebuilt_pairs = [(e, state.elem_level[e]) for e in rebuilt]
    untouched = None
    if state.debug:
        untouched = {
            e: (state.elem_level[e], state.asn[e])
            for e in state.active
            if state.elem_level[e] > i_crit
        }

    cleared = [
        s for s in range(state.sys.num_sets) if 0 <= state.set_level[s] <= i_crit
    ]
    for s in cleared:
        state.cov[s].clear()
        state.set_level[s] = EMPTY_LEVEL
        state._flip(s, -1)
    for e, old in rebuilt_pairs:
        for t in state.sys.incidence[e]:
            state.level_hist[t][old] -= 1
        state.active.remove(e)
        state.asn[e] = NO_SET

    raised: list[tuple[int, int]] = []
    touched = set(cleared)
    if rebuilt:
        candidates = sorted({t for e in rebuilt for t in state.sys.incidence[e]})
        stats: dict = {}
        static_greedy(state.sys, rebuilt, candidates, state.beta, state, stats=stats)
        raised = stats["raised"]
        touched.update(stats["assigned_sets"])

    if untouched is not None:
        raised_ids = {e for e, _ in raised}
        for e, (lev, owner) in untouched.items():
            if e in raised_ids:
                continue
            if state.elem_level[e] != lev or state.asn[e] != owner:
                raise ValueError(
                    f"rebuild below {i_crit} moved element {e} at level {lev}"
                )

    return RebuildReport(
        elements_rebuilt=len(rebuilt),
        sets_touched=sorted(touched),
        rebuilt=rebuilt_pairs,
        raised=raised,
    )
