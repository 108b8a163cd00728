#!/usr/bin/env python3
"""Write a synthetic instance corpus plus dynamized sequences.

Usage:
    python3 scripts/gen_corpus.py --out corpus/ --count 5 --elements 5000 --seed 1
"""

import argparse
from pathlib import Path

from dyncover.dynamizer import dynamize, write_sequence
from dyncover.setsystem import dump_instance
from dyncover.synth import synthetic_system


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", required=True)
    parser.add_argument("--count", type=int, default=5)
    parser.add_argument("--elements", type=int, default=5000)
    parser.add_argument("--sets", type=int, default=300)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i in range(args.count):
        seed = args.seed + i
        sys_ = synthetic_system(args.elements, seed=seed, num_sets=args.sets)
        seq = dynamize(sys_, seed)
        stem = f"synth_{args.elements}_{seed:03d}"
        (out / f"{stem}.hgr").write_text(dump_instance(sys_))
        (out / f"{stem}.seq").write_text(write_sequence(seq))
        print(f"{stem}: {sys_.num_elements} elements, {sys_.num_sets} sets, "
              f"{seq.k} steps, cap {seq.n_cap}")


if __name__ == "__main__":
    main()
