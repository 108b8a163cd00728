#!/usr/bin/env python3
"""Sweep a beta grid over a corpus, print the per-pair monotonicity table,
and emit the CSVs the plotting package consumes.

Usage:
    python3 scripts/gen_corpus.py --out corpus/ --count 5
    python3 scripts/trend_report.py --instances corpus/ --out-dir report/
"""

import argparse
from pathlib import Path

from dyncover import bench
from dyncover.dynamizer import read_sequence
from dyncover.setsystem import load_instance


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--instances", required=True)
    parser.add_argument("--algos", default="robust,local,partial,global")
    parser.add_argument("--betas", default="1.1,1.5,1.9")
    parser.add_argument("--reps", type=int, default=1)
    parser.add_argument("--out-dir", required=True)
    args = parser.parse_args()

    algos = args.algos.split(",")
    betas = [float(b) for b in args.betas.split(",")]
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    records = []
    for path in sorted(Path(args.instances).glob("*.hgr")):
        sys_ = load_instance(path.read_text())
        seq = read_sequence(path.with_suffix(".seq").read_text())
        for algo in algos:
            for beta in betas:
                for rep in range(args.reps):
                    records.append(
                        bench.run_experiment(
                            sys_, seq, algo, beta, rep=rep, instance=path.stem
                        )
                    )
                print(f"{path.stem} {algo} beta={beta}: done")

    (out_dir / "results.csv").write_text(bench.write_records_csv(records))
    (out_dir / "tradeoff.csv").write_text(
        bench.write_tradeoff_csv(bench.tradeoff_rows(records))
    )
    best = bench.select_best_beta(records)
    for metric in ("size", "time", "recourse"):
        chosen = [r for r in records if r.beta == best[r.algo]]
        curve = bench.performance_profile(chosen, metric)
        (out_dir / f"profile_{metric}.csv").write_text(bench.write_profile_csv(curve))

    print("\nbest beta per algorithm (argmin g, median across instances):")
    for algo, beta in sorted(best.items()):
        print(f"  {algo}: {beta}")

    print("\nmonotonicity per (instance, algorithm): size up / recourse down with beta")
    averaged = {}
    for rec in records:
        averaged.setdefault((rec.instance, rec.algo, rec.beta), []).append(rec)
    instances = sorted({r.instance for r in records})
    good = total = 0
    for inst in instances:
        for algo in algos:
            sizes, recourses = [], []
            for beta in betas:
                recs = averaged[(inst, algo, beta)]
                sizes.append(sum(r.amortized_size for r in recs) / len(recs))
                recourses.append(sum(r.amortized_recourse for r in recs) / len(recs))
            size_up = all(a <= b + 1e-12 for a, b in zip(sizes, sizes[1:]))
            rec_down = all(a >= b - 1e-12 for a, b in zip(recourses, recourses[1:]))
            total += 1
            good += size_up and rec_down
            mark = "ok" if size_up and rec_down else "MISS"
            print(f"  {mark:4s} {inst} {algo}: sizes {[round(s, 2) for s in sizes]} "
                  f"recourse {[round(r, 4) for r in recourses]}")
    print(f"\n{good}/{total} pairs follow the expected trend")


if __name__ == "__main__":
    main()
