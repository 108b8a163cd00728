"""Figure rendering: pure functions of the benchmark CSVs.

The profile CSV has columns metric,algo,tau,fraction; the trade-off CSV has
algo,beta,gm_norm_size,gm_norm_time,gm_norm_recourse. No computation happens
here beyond plotting, so the benchmark side is complete without this package.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.ticker import PercentFormatter

PROFILE_COLUMNS = ["metric", "algo", "tau", "fraction"]
TRADEOFF_COLUMNS = ["algo", "beta", "gm_norm_size", "gm_norm_time", "gm_norm_recourse"]


def _read_rows(text: str, columns: list[str]) -> list[dict[str, str]]:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty CSV")
    header = lines[0].split(",")
    for column in columns:
        if column not in header:
            raise ValueError(f"missing column {column!r}")
    if header != columns:
        raise ValueError(f"unexpected columns {header!r}")
    rows = [dict(zip(header, row)) for row in csv.reader(lines[1:])]
    if not rows:
        raise ValueError("CSV has a header but no rows")
    return rows


def load_profile(text: str) -> dict[str, dict[str, list[tuple[float, float]]]]:
    """metric -> algo -> [(tau, fraction)] in file order."""
    out: dict[str, dict[str, list[tuple[float, float]]]] = {}
    for row in _read_rows(text, PROFILE_COLUMNS):
        out.setdefault(row["metric"], {}).setdefault(row["algo"], []).append(
            (float(row["tau"]), float(row["fraction"]))
        )
    return out


def load_tradeoff(text: str) -> dict[str, list[tuple[float, float, float, float]]]:
    """algo -> [(beta, size, time, recourse)] sorted by beta."""
    out: dict[str, list[tuple[float, float, float, float]]] = {}
    for row in _read_rows(text, TRADEOFF_COLUMNS):
        out.setdefault(row["algo"], []).append(
            (
                float(row["beta"]),
                float(row["gm_norm_size"]),
                float(row["gm_norm_time"]),
                float(row["gm_norm_recourse"]),
            )
        )
    for rows in out.values():
        rows.sort(key=lambda r: r[0])
    return out


def profile_figure(curves: dict[str, list[tuple[float, float]]], metric: str):
    fig, ax = plt.subplots(figsize=(5, 4))
    for algo in sorted(curves):
        points = curves[algo]
        taus = [tau for tau, _ in points]
        fractions = [fraction for _, fraction in points]
        ax.step(taus, fractions, where="post", label=algo)
    ax.set_xlabel("tau")
    ax.set_ylabel("instances within tau of best")
    ax.set_ylim(0.0, 1.05)
    ax.yaxis.set_major_formatter(PercentFormatter(xmax=1.0))
    ax.set_title(f"performance profile: amortized {metric}")
    ax.legend()
    fig.tight_layout()
    return fig


def tradeoff_figure(series: dict[str, list[tuple[float, float, float, float]]]):
    fig, (ax_time, ax_recourse) = plt.subplots(1, 2, figsize=(9, 4))
    for algo in sorted(series):
        rows = series[algo]
        sizes = [r[1] for r in rows]
        times = [r[2] for r in rows]
        recourses = [r[3] for r in rows]
        ax_time.plot(times, sizes, marker="o", label=algo)
        ax_recourse.plot(recourses, sizes, marker="o", label=algo)
    ax_time.set_xlabel("normalized update time")
    ax_time.set_ylabel("normalized cover size")
    ax_recourse.set_xlabel("normalized recourse")
    ax_recourse.set_ylabel("normalized cover size")
    ax_time.legend()
    ax_recourse.legend()
    fig.suptitle("quality vs. efficiency (geometric means, beta increasing along curves)")
    fig.tight_layout()
    return fig


def render_profiles(profile_csv: str | Path, out_dir: str | Path) -> dict[str, Path]:
    """One step-plot figure per metric found in the CSV; returns the paths."""
    by_metric = load_profile(Path(profile_csv).read_text())
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: dict[str, Path] = {}
    for metric, curves in sorted(by_metric.items()):
        fig = profile_figure(curves, metric)
        path = out_dir / f"profile_{metric}.svg"
        fig.savefig(path)
        plt.close(fig)
        written[metric] = path
    return written


def render_tradeoff(tradeoff_csv: str | Path, out_path: str | Path) -> Path:
    """Two panels, size vs. time and size vs. recourse, beta-ordered curves."""
    series = load_tradeoff(Path(tradeoff_csv).read_text())
    fig = tradeoff_figure(series)
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_path)
    plt.close(fig)
    return out_path
