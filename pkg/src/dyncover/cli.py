"""Command-line surface: dynamize, run, sweep, profile, best-beta, verify, oracle."""

from __future__ import annotations

import argparse
import sys as _sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from dyncover import bench
from dyncover.dynamizer import dynamize, read_sequence, write_sequence
from dyncover.oracle import OracleBudget, opt_cover
from dyncover.setsystem import load_instance


def _load_system(path: str):
    return load_instance(Path(path).read_text())


def _load_sequence(path: str):
    return read_sequence(Path(path).read_text())


def _cmd_dynamize(args) -> int:
    sys_ = _load_system(args.instance)
    seq = dynamize(sys_, args.seed)
    Path(args.out).write_text(write_sequence(seq))
    print(f"wrote {seq.k} steps (cap {seq.n_cap}, seed {seq.seed}) to {args.out}")
    return 0


def _cmd_run(args) -> int:
    sys_ = _load_system(args.instance)
    seq = _load_sequence(args.sequence)
    record = bench.run_experiment(
        sys_,
        seq,
        args.algo,
        args.beta,
        checking=args.check,
        instance=Path(args.instance).stem,
    )
    print(
        f"{record.instance} {record.algo} beta={record.beta} steps={record.steps} "
        f"size={record.amortized_size:.6g} time_ns={record.amortized_time_ns:.6g} "
        f"recourse={record.amortized_recourse:.6g}"
    )
    if args.out:
        Path(args.out).write_text(bench.write_records_csv([record]))
    return 0


def _sweep_task(task):
    instance_path, seq_text, algo, beta, rep = task
    sys_ = _load_system(instance_path)
    seq = read_sequence(seq_text)
    record = bench.run_experiment(
        sys_, seq, algo, beta, rep=rep, instance=Path(instance_path).stem
    )
    return record


def _cmd_sweep(args) -> int:
    algos = args.algos.split(",")
    betas = [float(b) for b in args.betas.split(",")]
    instance_dir = Path(args.instances)
    instance_paths = sorted(instance_dir.glob("*.hgr"))
    if not instance_paths:
        raise ValueError(f"no *.hgr instances under {instance_dir}")
    comments = [f"parallel={args.parallel}"]
    tasks = []
    for path in instance_paths:
        seq_path = path.with_suffix(".seq")
        if seq_path.exists():
            seq_text = seq_path.read_text()
        else:
            # no pre-generated workload next to the instance; use the default seed
            seq_text = write_sequence(dynamize(_load_system(str(path)), args.seed))
            comments.append(f"generated sequence for {path.name} with seed={args.seed}")
        for algo in algos:
            for beta in betas:
                for rep in range(args.reps):
                    tasks.append((str(path), seq_text, algo, beta, rep))
    if args.parallel > 1:
        with ProcessPoolExecutor(max_workers=args.parallel) as pool:
            records = list(pool.map(_sweep_task, tasks))
    else:
        records = [_sweep_task(t) for t in tasks]
    records.sort(key=lambda r: (r.instance, r.algo, r.beta, r.rep))
    Path(args.out).write_text(bench.write_records_csv(records, comments=comments))
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def _cmd_profile(args) -> int:
    records = bench.read_records_csv(Path(args.infile).read_text())
    curve = bench.performance_profile(records, args.metric)
    Path(args.out).write_text(bench.write_profile_csv(curve))
    print(f"wrote {args.metric} profile for {len(curve.curves)} algorithms to {args.out}")
    return 0


def _cmd_best_beta(args) -> int:
    records = bench.read_records_csv(Path(args.infile).read_text())
    for algo, beta in sorted(bench.select_best_beta(records).items()):
        print(f"{algo} {beta}")
    return 0


def _cmd_verify(args) -> int:
    sys_ = _load_system(args.instance)
    seq = _load_sequence(args.sequence)
    try:
        bench.replay(sys_, seq, args.algo, args.beta, checking=True)
    except bench.VerificationError as exc:
        print(f"verification failed: {exc}", file=_sys.stderr)
        return 1
    print(f"verified {seq.k} steps: all invariants held")
    return 0


def _cmd_oracle(args) -> int:
    sys_ = _load_system(args.instance)
    if args.universe:
        ids = [int(tok) - 1 for tok in Path(args.universe).read_text().split()]
    else:
        ids = list(range(sys_.num_elements))
    budget = OracleBudget(max_elements=args.max_elements, max_sets=args.max_sets)
    print(opt_cover(sys_, ids, budget))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dyncover")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dynamize", help="generate an update sequence for an instance")
    p.add_argument("instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_dynamize)

    p = sub.add_parser("run", help="run one algorithm over one sequence")
    p.add_argument("--algo", choices=sorted(bench.ALGORITHMS), required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--instance", required=True)
    p.add_argument("--sequence", required=True)
    p.add_argument("--check", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("sweep", help="run an algorithm x beta grid over a directory")
    p.add_argument("--algos", required=True)
    p.add_argument("--betas", required=True)
    p.add_argument("--instances", required=True)
    p.add_argument("--reps", type=int, required=True)
    p.add_argument("--parallel", type=int, default=1)
    p.add_argument("--seed", type=int, default=42,
                   help="dynamizer seed when no .seq file sits next to an instance")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("profile", help="performance profile from a results CSV")
    p.add_argument("--metric", choices=["size", "time", "recourse"], required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("best-beta", help="per-algorithm beta minimizing g")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=_cmd_best_beta)

    p = sub.add_parser("verify", help="replay with invariant checking forced on")
    p.add_argument("--algo", choices=sorted(bench.ALGORITHMS), required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--instance", required=True)
    p.add_argument("--sequence", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="exact optimum cover size")
    p.add_argument("--instance", required=True)
    p.add_argument("--universe", help="file of 1-based element ids; default all")
    p.add_argument("--max-elements", type=int, default=20)
    p.add_argument("--max-sets", type=int, default=24)
    p.set_defaults(func=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 1


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
