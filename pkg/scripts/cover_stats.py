"""Sparse-cover statistics (m, resamples, dependency degree) over a range of t.

    python scripts/cover_stats.py --n 800 --delta 0.15 --t 1 --t 2 --t 4
"""

import argparse
import json
import math

from strongpad import FamilySpec, Rng, generate, sparse_cover


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=800)
    ap.add_argument("--delta", type=float, default=0.15)
    ap.add_argument("--t", type=float, action="append")
    ap.add_argument("--seeds", type=int, default=3)
    args = ap.parse_args(argv)
    g = generate(FamilySpec("random-geometric", n=args.n, radius=math.sqrt(8 / (math.pi * args.n)), seed=1))
    for t in args.t or [1.0, 2.0]:
        for seed in range(args.seeds):
            cov, rep = sparse_cover(g, args.delta, t, None, None, Rng(seed), ddim_hint=2.0)
            keep = ("t", "m", "resamples", "net_points", "dependency_degree_max", "success", "m_shape")
            print(json.dumps({k: rep.get(k) for k in keep} | {"seed": seed}))


if __name__ == "__main__":
    main()
