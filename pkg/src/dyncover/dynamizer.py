"""Turn a static instance into a reproducible insert/delete workload.

The generated sequence inserts every element exactly once (in file order)
and deletes it exactly once, never holds more than n_cap = max(1, x // 10)
active elements, and ends empty. While below capacity each event is an
insertion with probability 0.8 or a deletion of one of the five most
recently inserted active elements; hitting capacity triggers a cleanup that
evicts d ~ Uniform(1, max(1, n_cap // 10)) oldest elements.

All randomness comes from SplitMix64 with a fixed draw order (one draw per
branch decision, one per victim choice, one per cleanup size), so a given
(instance, seed) pair always produces byte-identical output.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from dyncover.setsystem import SetSystem

INSERT = "+"
DELETE = "-"

_GOLDEN = 0x9E3779B97F4A7C15
_MASK = (1 << 64) - 1
# u < 0.8 with u = z / 2**64, as an integer cutoff
_INSERT_CUTOFF = (4 << 64) // 5 + 1


class SplitMix64:
    """Steele et al. splitmix64; the project-wide reproducible generator."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return self.next_u64() % n


@dataclass(frozen=True)
class UpdateStep:
    op: str  # INSERT or DELETE
    element: int


@dataclass(frozen=True)
class UpdateSequence:
    x: int  # total distinct elements
    n_cap: int  # capacity bound on the active universe
    seed: int
    steps: tuple[UpdateStep, ...]

    @property
    def k(self) -> int:
        return len(self.steps)


def dynamize(sys: SetSystem, seed: int) -> UpdateSequence:
    """Generate the capacity-constrained workload for `sys`."""
    x = sys.num_elements
    if x == 0:
        raise ValueError("no elements")
    n_cap = max(1, x // 10)
    cleanup_bound = max(1, n_cap // 10)
    rng = SplitMix64(seed)
    steps: list[UpdateStep] = []
    active: list[int] = []  # insertion order, oldest first
    inserted = 0
    while inserted < x:
        if len(active) == n_cap:
            d = 1 + rng.below(cleanup_bound)
            for _ in range(d):
                steps.append(UpdateStep(DELETE, active.pop(0)))
            continue
        z = rng.next_u64()
        if z < _INSERT_CUTOFF or not active:
            steps.append(UpdateStep(INSERT, inserted))
            active.append(inserted)
            inserted += 1
        else:
            window = min(5, len(active))
            idx = rng.below(window)  # 0 = most recent
            victim = active.pop(len(active) - 1 - idx)
            steps.append(UpdateStep(DELETE, victim))
    while active:
        steps.append(UpdateStep(DELETE, active.pop(0)))
    return UpdateSequence(x=x, n_cap=n_cap, seed=seed, steps=tuple(steps))


def validate_sequence(seq: UpdateSequence, sys: SetSystem) -> str:
    """Check every sequence invariant; returns "OK" or the first violation."""
    if seq.x != sys.num_elements:
        return f"sequence is for {seq.x} elements, instance has {sys.num_elements}"
    if seq.k != 2 * seq.x:
        return f"sequence length {seq.k} is not 2x = {2 * seq.x}"
    inserted: set[int] = set()
    deleted: set[int] = set()
    active = 0
    last_insert = -1
    for i, step in enumerate(seq.steps, start=1):
        e = step.element
        if not 0 <= e < seq.x:
            return f"element {e + 1} out of range at step {i}"
        if step.op == INSERT:
            if e in inserted:
                return f"element {e + 1} inserted twice at step {i}"
            if e <= last_insert:
                return f"insertions out of order at step {i}"
            last_insert = e
            inserted.add(e)
            active += 1
            if active > seq.n_cap:
                return f"capacity {seq.n_cap} exceeded at step {i}"
        elif step.op == DELETE:
            if e not in inserted or e in deleted:
                return f"element {e + 1} deleted while not active at step {i}"
            deleted.add(e)
            active -= 1
        else:
            return f"unknown op {step.op!r} at step {i}"
    if active != 0:
        return "sequence does not end empty"
    if len(inserted) != seq.x:
        return f"only {len(inserted)} of {seq.x} elements inserted"
    return "OK"


def write_sequence(seq: UpdateSequence) -> str:
    lines = [f"# x={seq.x} cap={seq.n_cap} seed={seq.seed} k={seq.k}"]
    for step in seq.steps:
        lines.append(f"{step.op} {step.element + 1}")
    return "\n".join(lines) + "\n"


_HEADER = re.compile(r"#\s*x=(\d+)\s+cap=(\d+)\s+seed=(\d+)\s+k=(\d+)\s*$")


def read_sequence(text: str) -> UpdateSequence:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty sequence file")
    match = _HEADER.match(lines[0])
    if not match:
        raise ValueError(f"malformed sequence header: {lines[0]!r}")
    x, n_cap, seed, k = (int(g) for g in match.groups())
    steps = []
    for line in lines[1:]:
        fields = line.split()
        if len(fields) != 2 or fields[0] not in (INSERT, DELETE):
            raise ValueError(f"malformed step line: {line!r}")
        steps.append(UpdateStep(fields[0], int(fields[1]) - 1))
    if len(steps) != k:
        raise ValueError(f"header says k={k} but found {len(steps)} steps")
    return UpdateSequence(x=x, n_cap=n_cap, seed=seed, steps=tuple(steps))
