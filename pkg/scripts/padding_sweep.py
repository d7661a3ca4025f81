"""Padding frequency versus gamma for every scheme on one graph, written as CSV.

Example:
    python scripts/padding_sweep.py --family random-geometric --n 1000 --trials 300 --out sweep.csv
"""

import argparse
import csv
import math
import sys
import time

from strongpad import FamilySpec, Rng, SchemeConfig, calibrate_delta, estimate_padding, generate


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--family", default="random-geometric", choices=["random-geometric", "grid", "tree"])
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--r", type=int, default=5)
    ap.add_argument("--trials", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out", default="padding_sweep.csv")
    args = ap.parse_args(argv)

    if args.family == "grid":
        side = int(math.sqrt(args.n))
        g = generate(FamilySpec("grid", rows=side, cols=side))
    elif args.family == "tree":
        g = generate(FamilySpec("tree", n=args.n, seed=args.seed))
    else:
        g = generate(FamilySpec("random-geometric", n=args.n, radius=math.sqrt(8 / (math.pi * args.n)), seed=args.seed))
    delta = calibrate_delta(g, 30, 100)
    print(f"n={g.n} m={g.m} delta={delta:.4f}", file=sys.stderr)

    gammas = [0, 1 / 128, 1 / 64, 1 / 32]
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["scheme", "delta", "gamma", "mean", "worst", "floor", "lambda", "tau", "seconds"])
        for kind in ("doubling", "cones", "minor-free"):
            d = 8 * delta if kind == "minor-free" else delta
            cfg = SchemeConfig(kind, d, r=args.r if kind == "minor-free" else None)
            t0 = time.perf_counter()
            rep = estimate_padding(g, cfg, gammas, args.trials, Rng(args.seed), max_gamma=max(gammas),
                                   threads=args.threads)
            dt = time.perf_counter() - t0
            print(rep.table())
            for i, gm in enumerate(gammas):
                w.writerow([kind, d, gm, rep.frequency[i], rep.worst[i], rep.floor[i], rep.lam, rep.tau, round(dt, 2)])
    print(f"wrote {args.out}", file=sys.stderr)


if __name__ == "__main__":
    main()
