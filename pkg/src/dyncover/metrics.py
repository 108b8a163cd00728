"""Per-step and per-run measurement records."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class StepReport:
    """What one update step did: solution size, churn, and cost."""

    cover_size: int
    recourse: int
    rebuild_fired: bool = False
    elapsed_ns: int = 0


@dataclass(frozen=True)
class MetricsRecord:
    """Amortized metrics for one (instance, algorithm, beta, rep) run."""

    instance: str
    algo: str
    beta: float
    rep: int
    steps: int
    amortized_size: float
    amortized_time_ns: float
    amortized_recourse: float
