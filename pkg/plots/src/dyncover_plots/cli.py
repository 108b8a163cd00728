"""Script entry: render profile and trade-off figures from CSVs."""

from __future__ import annotations

import argparse
import sys

from dyncover_plots.render import render_profiles, render_tradeoff


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="dyncover-plots")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profiles", help="one figure per metric in a profile CSV")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out-dir", required=True)

    p = sub.add_parser("tradeoff", help="quality vs. efficiency curves")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)

    args = parser.parse_args(argv)
    try:
        if args.command == "profiles":
            written = render_profiles(args.infile, args.out_dir)
            for metric, path in sorted(written.items()):
                print(f"{metric}: {path}")
        else:
            print(render_tradeoff(args.infile, args.out))
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
