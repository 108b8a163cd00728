"""Experiment harness: replay sequences, aggregate amortized metrics,
select betas with the g objective, and build performance profiles."""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import dataclass
from statistics import mean

from dyncover import algo_global, algo_local, algo_partial, algo_robust, oracle
from dyncover.dynamizer import UpdateSequence, validate_sequence
from dyncover.levels import check_properties, cover_of
from dyncover.metrics import MetricsRecord, StepReport
from dyncover.setsystem import SetSystem

# medians of the per-instance g winners reported for the reference corpus;
# shipped as presets, not asserted as reproducible on other workloads
REFERENCE_BETAS = {"robust": 1.99, "local": 1.9, "partial": 1.99, "global": 1.495}

ALGORITHMS = {
    "robust": (algo_robust.robust_init, algo_robust.robust_update),
    "local": (algo_local.local_init, algo_local.local_update),
    "partial": (algo_partial.partial_init, algo_partial.partial_update),
    "global": (algo_global.global_init, algo_global.global_update),
    "naive": (oracle.naive_init, oracle.naive_update),
}

RESULTS_HEADER = "instance,algo,beta,rep,steps,amortized_size,amortized_time_ns,amortized_recourse"
PROFILE_HEADER = "metric,algo,tau,fraction"
TRADEOFF_HEADER = "algo,beta,gm_norm_size,gm_norm_time,gm_norm_recourse"

_METRIC_FIELDS = {
    "size": "amortized_size",
    "time": "amortized_time_ns",
    "recourse": "amortized_recourse",
}


class VerificationError(Exception):
    def __init__(self, step_index: int, message: str):
        super().__init__(f"step {step_index + 1}: {message}")
        self.step_index = step_index


def _covers_active(active, cover, sys: SetSystem) -> None:
    for e in active:
        if not any(t in cover for t in sys.incidence[e]):
            raise ValueError(f"active element {e + 1} is uncovered")


def make_checker(algorithm: str, state):
    """Per-step invariant checker for `algorithm`; raises ValueError."""
    if algorithm == "robust":

        def check() -> None:
            _covers_active(state.active, state.cover, state.sys)
            if state.r < 1:
                raise ValueError(f"interval countdown must stay positive, got {state.r}")

    elif algorithm == "naive":

        def check() -> None:
            _covers_active(state.active, state.cover, state.sys)
            if state.level is not None:
                state.level.validate()
                report = check_properties(state.level, state.beta, 0, 0)
                if not report.passed:
                    raise ValueError(f"greedy properties violated: {report}")

    elif algorithm == "local":

        def check() -> None:
            state.level.validate()
            _covers_active(state.level.active, cover_of(state.level), state.level.sys)
            report = check_properties(state.level, state.beta, 1, 1)
            if report.property1_violations:
                raise ValueError(f"ND sets present: {report.property1_violations}")
            if report.property2_violations:
                raise ValueError(f"PD sets present: {report.property2_violations}")

    elif algorithm == "partial":

        def check() -> None:
            state.level.validate()
            _covers_active(state.level.active, cover_of(state.level), state.level.sys)
            report = check_properties(state.level, state.beta, 1, 1)
            if report.property2_violations:
                raise ValueError(f"PD sets present: {report.property2_violations}")
            if state.dirt_scaled > 0 and (
                state.dirt_scaled >= state.rhs_weight * state.level.cover_size
            ):
                raise ValueError("dirt at or above the rebuild threshold")
            expected = sum(
                c * w for c, w in zip(state.dirt_events, state.dirt_weights)
            )
            if expected != state.dirt_scaled:
                raise ValueError("dirt accumulator differs from event counts")

    elif algorithm == "global":
        previous_plev: dict[int, int] = {}

        def check() -> None:
            state.level.validate()
            _covers_active(state.level.active, cover_of(state.level), state.level.sys)
            clean, passive = algo_global.recompute_counters(state)
            if clean != state.clean:
                raise ValueError("incremental A counters drifted")
            if passive != state.passive:
                raise ValueError("incremental P counters drifted")
            for i in range(state.level.level_cap + 1):
                lhs = state.q_scale * (state.passive[i] + state.dirt[i])
                if lhs > state.rhs_scale * state.clean[i]:
                    raise ValueError(f"P+D exceeds 2(beta-1)A at level {i}")
            for e in state.level.active:
                if state.plev[e] < state.level.elem_level[e]:
                    raise ValueError(f"plev below lev for element {e + 1}")
                if e in previous_plev and state.plev[e] < previous_plev[e]:
                    raise ValueError(f"plev decreased for element {e + 1}")
            previous_plev.clear()
            previous_plev.update(
                (e, state.plev[e]) for e in state.level.active
            )

    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    return check


def replay(
    sys: SetSystem,
    seq: UpdateSequence,
    algorithm: str,
    beta: float,
    checking: bool = False,
):
    """Drive every step through the algorithm, timing only the update call.

    Returns (per-step reports, final state). Invariant checking runs after
    the clock stops, so it never contaminates the measured update time.
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if not seq.steps:
        raise ValueError("sequence has zero steps")
    verdict = validate_sequence(seq, sys)
    if verdict != "OK":
        raise ValueError(f"invalid sequence: {verdict}")
    init, update = ALGORITHMS[algorithm]
    state = init(sys, beta, seq.n_cap)
    checker = make_checker(algorithm, state) if checking else None
    reports: list[StepReport] = []
    for idx, step in enumerate(seq.steps):
        try:
            t0 = time.perf_counter_ns()
            report = update(state, step)
            report.elapsed_ns = time.perf_counter_ns() - t0
        except ValueError as exc:
            raise VerificationError(idx, str(exc)) from exc
        if checker is not None:
            try:
                checker()
            except ValueError as exc:
                raise VerificationError(idx, str(exc)) from exc
        reports.append(report)
    return reports, state


def run_experiment(
    sys: SetSystem,
    seq: UpdateSequence,
    algorithm: str,
    beta: float,
    rep: int = 0,
    checking: bool = False,
    instance: str = "instance",
) -> MetricsRecord:
    """One full run; rebuild spikes are averaged in, never excluded."""
    reports, _ = replay(sys, seq, algorithm, beta, checking=checking)
    k = len(reports)
    return MetricsRecord(
        instance=instance,
        algo=algorithm,
        beta=beta,
        rep=rep,
        steps=k,
        amortized_size=sum(r.cover_size for r in reports) / k,
        amortized_time_ns=sum(r.elapsed_ns for r in reports) / k,
        amortized_recourse=sum(r.recourse for r in reports) / k,
    )


def objective_g(s: float, t: float, r: float) -> float:
    """g(s, t, r) = s * sqrt(t) * sqrt(r); a zero-recourse run scores 0."""
    if s <= 0 or t <= 0:
        raise ValueError("size and time must be positive")
    if r < 0:
        raise ValueError("recourse cannot be negative")
    return s * math.sqrt(t) * math.sqrt(r)


def _averaged(records: list[MetricsRecord]) -> dict[tuple[str, str, float], tuple[float, float, float]]:
    """Mean (size, time, recourse) per (instance, algo, beta), reps pooled."""
    grouped: dict[tuple[str, str, float], list[MetricsRecord]] = {}
    for rec in records:
        grouped.setdefault((rec.instance, rec.algo, rec.beta), []).append(rec)
    return {
        key: (
            mean(r.amortized_size for r in recs),
            mean(r.amortized_time_ns for r in recs),
            mean(r.amortized_recourse for r in recs),
        )
        for key, recs in grouped.items()
    }


def select_best_beta(records: list[MetricsRecord]) -> dict[str, float]:
    """Per algorithm: the median over instances of the per-instance argmin-g
    beta (ties to the smaller beta, even counts to the lower median)."""
    averaged = _averaged(records)
    algos = sorted({algo for _, algo, _ in averaged})
    result = {}
    for algo in algos:
        instances = sorted({inst for inst, a, _ in averaged if a == algo})
        betas = sorted({b for _, a, b in averaged if a == algo})
        winners = []
        for inst in instances:
            best_beta = None
            best_g = None
            for beta in betas:
                if (inst, algo, beta) not in averaged:
                    raise ValueError(
                        f"missing record for instance {inst!r}, algo {algo!r}, beta {beta}"
                    )
                s, t, r = averaged[(inst, algo, beta)]
                g = objective_g(s, t, r)
                if best_g is None or g < best_g:
                    best_g, best_beta = g, beta
            winners.append(best_beta)
        winners.sort()
        result[algo] = winners[(len(winners) - 1) // 2]
    return result


@dataclass(frozen=True)
class ProfileCurve:
    """Dolan-More curves: per algorithm, fraction of instances within tau of
    the per-instance best."""

    metric: str
    curves: dict[str, list[tuple[float, float]]]


def performance_profile(records: list[MetricsRecord], metric: str) -> ProfileCurve:
    if metric not in _METRIC_FIELDS:
        raise ValueError(f"unknown metric {metric!r}")
    field = _METRIC_FIELDS[metric]
    grouped: dict[tuple[str, str], list[MetricsRecord]] = {}
    for rec in records:
        grouped.setdefault((rec.instance, rec.algo), []).append(rec)
    values: dict[tuple[str, str], float] = {}
    for key, recs in grouped.items():
        if len({r.beta for r in recs}) > 1:
            raise ValueError(f"multiple betas for {key}; aggregate to one per algorithm")
        value = mean(getattr(r, field) for r in recs)
        if value <= 0:
            raise ValueError(f"non-positive {metric} value for {key}")
        values[key] = value

    instances = sorted({inst for inst, _ in values})
    algos = sorted({algo for _, algo in values})
    ratios: dict[str, list[float]] = {algo: [] for algo in algos}
    for inst in instances:
        present = [values[(inst, a)] for a in algos if (inst, a) in values]
        best = min(present)
        for algo in algos:
            if (inst, algo) in values:
                ratios[algo].append(values[(inst, algo)] / best)
            # an algorithm missing an instance is never within any finite tau

    taus = sorted({1.0} | {r for rs in ratios.values() for r in rs})
    total = len(instances)
    curves = {
        algo: [
            (tau, sum(1 for r in ratios[algo] if r <= tau) / total) for tau in taus
        ]
        for algo in algos
    }
    return ProfileCurve(metric=metric, curves=curves)


def tradeoff_rows(records: list[MetricsRecord]) -> list[tuple[str, float, float, float, float]]:
    """Per (algo, beta): geometric mean across instances of the metric ratios
    to the per-instance best over all combinations."""
    averaged = _averaged(records)
    instances = sorted({inst for inst, _, _ in averaged})
    best: dict[tuple[str, int], float] = {}
    for inst in instances:
        for axis in range(3):
            vals = [v[axis] for (i, _, _), v in averaged.items() if i == inst]
            vals = [v for v in vals if v > 0]
            if not vals:
                raise ValueError(f"no positive values for instance {inst!r}")
            best[(inst, axis)] = min(vals)
    combos = sorted({(algo, beta) for _, algo, beta in averaged})
    rows = []
    for algo, beta in combos:
        gms = []
        for axis in range(3):
            logs = []
            for inst in instances:
                key = (inst, algo, beta)
                if key not in averaged:
                    continue
                value = averaged[key][axis]
                if value <= 0:
                    raise ValueError(f"non-positive metric for {key}")
                logs.append(math.log(value / best[(inst, axis)]))
            if not logs:
                raise ValueError(f"no records for algo {algo!r} beta {beta}")
            gms.append(math.exp(mean(logs)))
        rows.append((algo, beta, gms[0], gms[1], gms[2]))
    return rows


# -- CSV plumbing -----------------------------------------------------------


def write_records_csv(records: list[MetricsRecord], comments: list[str] | None = None) -> str:
    out = io.StringIO()
    for comment in comments or []:
        out.write(f"# {comment}\n")
    out.write(RESULTS_HEADER + "\n")
    writer = csv.writer(out)
    for r in records:
        writer.writerow(
            [
                r.instance,
                r.algo,
                repr(r.beta),
                r.rep,
                r.steps,
                repr(r.amortized_size),
                repr(r.amortized_time_ns),
                repr(r.amortized_recourse),
            ]
        )
    return out.getvalue()


def read_records_csv(text: str) -> list[MetricsRecord]:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0] != RESULTS_HEADER:
        raise ValueError("results CSV header mismatch")
    records = []
    for row in csv.reader(lines[1:]):
        records.append(
            MetricsRecord(
                instance=row[0],
                algo=row[1],
                beta=float(row[2]),
                rep=int(row[3]),
                steps=int(row[4]),
                amortized_size=float(row[5]),
                amortized_time_ns=float(row[6]),
                amortized_recourse=float(row[7]),
            )
        )
    return records


def write_profile_csv(curve: ProfileCurve) -> str:
    out = [PROFILE_HEADER]
    for algo in sorted(curve.curves):
        for tau, fraction in curve.curves[algo]:
            out.append(f"{curve.metric},{algo},{tau!r},{fraction!r}")
    return "\n".join(out) + "\n"


def write_tradeoff_csv(rows: list[tuple[str, float, float, float, float]]) -> str:
    out = [TRADEOFF_HEADER]
    for algo, beta, gs, gt, gr in rows:
        out.append(f"{algo},{beta!r},{gs!r},{gt!r},{gr!r}")
    return "\n".join(out) + "\n"
