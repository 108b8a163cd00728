"""Immutable set-system instances and the hMETIS-style text format.

A problem instance is a fixed family of sets over a fixed element universe.
Instance files are hypergraph files: hyperedges are elements, vertices are
sets, so line i of the body lists the sets containing element i.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SetSystem:
    """Static family of sets with both orientations of the incidence relation.

    Ids are dense and 0-based. `sets[s]` is the sorted element list of set s,
    `incidence[e]` is the sorted list of sets containing element e, and
    `frequency` is the largest incidence-list length.
    """

    num_elements: int
    num_sets: int
    sets: tuple[tuple[int, ...], ...]
    incidence: tuple[tuple[int, ...], ...]
    frequency: int

    @classmethod
    def from_incidence(cls, num_sets: int, incidence: list[list[int]]) -> "SetSystem":
        num_elements = len(incidence)
        if num_elements == 0:
            raise ValueError("no elements")
        if num_sets < 1:
            raise ValueError("no sets")
        sets: list[list[int]] = [[] for _ in range(num_sets)]
        for e, row in enumerate(incidence):
            if not row:
                raise ValueError(f"element {e + 1} belongs to no set")
            seen = set()
            for s in row:
                if not 0 <= s < num_sets:
                    raise ValueError(f"set id {s + 1} out of range for element {e + 1}")
                if s in seen:
                    raise ValueError(f"duplicate set {s + 1} for element {e + 1}")
                seen.add(s)
                sets[s].append(e)
        frequency = max(len(row) for row in incidence)
        return cls(
            num_elements=num_elements,
            num_sets=num_sets,
            sets=tuple(tuple(sorted(members)) for members in sets),
            incidence=tuple(tuple(sorted(row)) for row in incidence),
            frequency=frequency,
        )

    @classmethod
    def from_sets(cls, num_elements: int, sets: list[list[int]]) -> "SetSystem":
        """Build from set-major lists; convenience for tests and generators."""
        if num_elements < 1:
            raise ValueError("no elements")
        incidence: list[list[int]] = [[] for _ in range(num_elements)]
        for s, members in enumerate(sets):
            seen = set()
            for e in members:
                if not 0 <= e < num_elements:
                    raise ValueError(f"element id {e + 1} out of range in set {s + 1}")
                if e in seen:
                    raise ValueError(f"duplicate element {e + 1} in set {s + 1}")
                seen.add(e)
                incidence[e].append(s)
        return cls.from_incidence(len(sets), incidence)


def load_instance(text: str) -> SetSystem:
    """Parse instance text: '%' comments, header "<E> <V>", then E hyperedge
    lines of 1-based vertex ids. Line order is the static insertion order."""
    lines = [line.rstrip("\r") for line in text.split("\n")]
    lines = [line for line in lines if not line.lstrip().startswith("%")]
    while lines and lines[-1].strip() == "":
        lines.pop()
    if not lines:
        raise ValueError("malformed header: empty file")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"malformed header: {lines[0]!r}")
    try:
        num_elements, num_sets = int(header[0]), int(header[1])
    except ValueError as exc:
        raise ValueError(f"malformed header: {lines[0]!r}") from exc
    if num_elements < 1:
        raise ValueError("no elements")
    if num_sets < 1:
        raise ValueError("no sets")
    body = lines[1:]
    if len(body) != num_elements:
        raise ValueError(
            f"expected {num_elements} hyperedge lines, found {len(body)}"
        )
    incidence: list[list[int]] = []
    for i, line in enumerate(body):
        fields = line.split()
        if not fields:
            raise ValueError(f"element {i + 1} belongs to no set (empty hyperedge)")
        row = []
        for field in fields:
            v = int(field)
            if not 1 <= v <= num_sets:
                raise ValueError(f"set id {v} out of range for element {i + 1}")
            row.append(v - 1)
        if len(set(row)) != len(row):
            raise ValueError(f"duplicate set in hyperedge for element {i + 1}")
        incidence.append(row)
    return SetSystem.from_incidence(num_sets, incidence)


def dump_instance(sys: SetSystem) -> str:
    """Inverse of load_instance (1-based ids, no comments)."""
    out = [f"{sys.num_elements} {sys.num_sets}"]
    for row in sys.incidence:
        out.append(" ".join(str(s + 1) for s in row))
    return "\n".join(out) + "\n"


def frequency_of(sys: SetSystem) -> int:
    """Largest number of sets any single element belongs to."""
    return sys.frequency
