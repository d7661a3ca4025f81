"""Command-line front end: ``strongpad {generate,decompose,cover,verify,bench}``."""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import io
from .generators import FAMILIES, FamilySpec, calibrate_delta, generate
from .graph import Graph, PreconditionError
from .rng import Rng
from .schemes import KINDS, SchemeConfig, decompose
from .verify import check_cover, check_partition, estimate_padding, estimate_separating

DEFAULT_GRAPH = FamilySpec("random-geometric", n=2000, dim=2, radius=0.05, seed=1)


class UsageError(Exception):
    pass


def _seed(args) -> int:
    if getattr(args, "seed", None) is None:
        args.seed = int(np.random.SeedSequence().entropy % (2**32))
        print(f"seed: {args.seed} (derived)", file=sys.stderr)
    else:
        print(f"seed: {args.seed}", file=sys.stderr)
    return args.seed


def _load_graph(args) -> tuple[Graph, dict]:
    if getattr(args, "input", None):
        return io.read_graph(args.input), {"graph": str(args.input)}
    g = generate(DEFAULT_GRAPH)
    print(f"no --in given; using {DEFAULT_GRAPH.family} n={DEFAULT_GRAPH.n} seed={DEFAULT_GRAPH.seed}", file=sys.stderr)
    return g, {"graph": DEFAULT_GRAPH.to_json()}


def _scheme(args, g: Graph) -> SchemeConfig:
    delta = args.delta
    if delta is None:
        if args.scheme == "minor-free":
            raise UsageError("--delta is required for the minor-free scheme")
        delta = calibrate_delta(g)
        print(f"delta: {delta!r} (calibrated for a 30..100 point net)", file=sys.stderr)
    centers = None
    if getattr(args, "centers", None):
        centers = [int(x) for x in Path(args.centers).read_text().split()]
    if args.scheme == "centers" and centers is None:
        print("no --centers file; using the greedy net", file=sys.stderr)
    try:
        return SchemeConfig(args.scheme, delta, args.r, args.lam, args.seed, centers)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _out(args, default: str) -> Path:
    return Path(args.out) if args.out else Path(default)


def cmd_generate(args) -> int:
    _seed(args)
    spec = FamilySpec(args.family, n=args.n or 0, rows=args.rows or 0, cols=args.cols or 0, dim=args.dim,
                      radius=args.radius or 0.0, weights=args.weights, low=args.low, high=args.high, seed=args.seed)
    g = generate(spec)
    out = _out(args, "graph.json")
    io.write_graph(g, out, args.format, args.hexfloat, meta={"family": spec.to_json(), "seed": args.seed})
    print(f"wrote {out}: n={g.n} m={g.m}")
    return 0


def _bound(cfg: SchemeConfig) -> float:
    return cfg.delta if cfg.kind == "minor-free" else 4 * cfg.delta


def cmd_decompose(args) -> int:
    _seed(args)
    g, src = _load_graph(args)
    cfg = _scheme(args, g)
    part, trace, report = decompose(g, cfg, Rng(args.seed))
    chk = check_partition(g, part, _bound(cfg))
    report.update(source=src, check=chk.summary(), ok=chk.ok)
    prefix = _out(args, "run")
    meta = {"config": cfg.to_json(), "seed": args.seed, **src}
    io.write_partition(part, f"{prefix}.partition.json", meta)
    io.write_trace(trace, f"{prefix}.trace.json", meta)
    Path(f"{prefix}.report.json").write_text(json.dumps(report, indent=1, sort_keys=True, default=str) + "\n")
    if args.format == "dot":
        Path(f"{prefix}.dot").write_text(io.to_dot(g, part))
    print(f"{len(part.clusters)} clusters; {chk.summary()}")
    return 0 if chk.ok else 1


def cmd_cover(args) -> int:
    from .cover import sparse_cover

    _seed(args)
    g, src = _load_graph(args)
    if args.delta is None:
        raise UsageError("--delta is required for cover")
    cov, report = sparse_cover(g, args.delta, args.t, args.m, args.budget, Rng(args.seed))
    prefix = _out(args, "cover")
    meta = {"config": {"delta": args.delta, "t": args.t, "m": args.m, "budget": args.budget}, "seed": args.seed, **src}
    report["source"] = src
    Path(f"{prefix}.report.json").write_text(json.dumps(report, indent=1, sort_keys=True, default=str) + "\n")
    if cov is None:
        print(f"cover failed: {report.get('check', 'resampling budget exhausted')}")
        return 1
    io.write_cover(cov, f"{prefix}.cover.json", meta)
    print(f"m={cov.m} clusters={len(cov.clusters)} resamples={report['resamples']} valid={report['valid']}")
    return 0


def cmd_verify(args) -> int:
    _seed(args)
    g, src = _load_graph(args)
    what = args.what
    if what == "partition":
        if not args.partition:
            raise UsageError("verify partition needs --partition FILE")
        p = io.read_partition(args.partition)
        bound = args.bound if args.bound is not None else 4 * p.delta
        chk = check_partition(g, p, bound)
        print(chk.summary())
        _write_report(args, {"ok": chk.ok, "summary": chk.summary(), "diameters": chk.diameters, **src})
        return 0 if chk.ok else 1
    if what == "cover":
        if not args.cover:
            raise UsageError("verify cover needs --cover FILE")
        c = io.read_cover(args.cover)
        beta = args.beta if args.beta is not None else c.delta / c.padding_radius
        chk = check_cover(g, c, beta, args.m if args.m is not None else c.m)
        print(chk.summary())
        _write_report(args, {"ok": chk.ok, "summary": chk.summary(), **src})
        return 0 if chk.ok else 1
    cfg = _scheme(args, g)
    rng = Rng(args.seed)
    if what == "padding":
        gammas = args.gamma or [1 / 64, 1 / 32, 1 / 16]
        rep = estimate_padding(g, cfg, gammas, args.trials, rng, max_gamma=args.max_gamma, threads=args.threads)
        print(rep.table())
        _write_report(args, {**rep.to_json(), "ok": rep.ok, **src})
        return 0 if rep.ok else 1
    rep = estimate_separating(g, cfg, args.trials, rng, args.beta, threads=args.threads)
    print(rep.table())
    _write_report(args, {**rep.to_json(), "ok": rep.ok, **src})
    return 0 if rep.ok else 1


def _write_report(args, data: dict):
    if args.out:
        data = {**data, "seed": args.seed}
        Path(args.out).write_text(json.dumps(data, indent=1, sort_keys=True, default=str) + "\n")


def _bench_graph(family: str, n: int, seed: int) -> Graph:
    if family == "grid":
        side = max(1, int(round(math.sqrt(n))))
        return generate(FamilySpec("grid", rows=side, cols=side, seed=seed))
    if family == "random-geometric":
        return generate(FamilySpec(family, n=n, radius=math.sqrt(8.0 / (math.pi * n)), seed=seed))
    return generate(FamilySpec(family, n=n, seed=seed))


def cmd_bench(args) -> int:
    _seed(args)
    families = args.family or ["random-geometric"]
    sizes = args.n or [500]
    schemes = args.scheme_list or ["doubling"]
    gammas = args.gamma or [1 / 32]
    out = _out(args, "bench.csv")
    new = not out.exists() or out.stat().st_size == 0
    with open(out, "a", newline="") as fh:
        w = csv.writer(fh)
        if new:
            w.writerow(["family", "n", "delta", "scheme", "gamma", "frequency", "floor", "runtime", "seed", "trials"])
        for fam in families:
            for n in sizes:
                g = _bench_graph(fam, n, args.seed)
                for kind in schemes:
                    delta = args.delta if args.delta is not None else calibrate_delta(g, 5, max(10, g.n // 10))
                    cfg = SchemeConfig(kind, delta, args.r if kind == "minor-free" else None, args.lam, args.seed)
                    t0 = time.perf_counter()
                    rep = estimate_padding(g, cfg, gammas, args.trials, Rng(args.seed), max_gamma=max(gammas),
                                           threads=args.threads)
                    dt = time.perf_counter() - t0
                    for i, gm in enumerate(gammas):
                        fl = rep.floor[i]
                        w.writerow([fam, g.n, repr(delta), kind, repr(gm), repr(rep.frequency[i]),
                                    "" if fl is None else repr(fl), f"{dt:.3f}", args.seed, args.trials])
                    print(f"{fam} n={g.n} {kind}: {dt:.1f}s")
    print(f"appended to {out}")
    return 0


def _common(p: argparse.ArgumentParser, graph: bool = True):
    p.add_argument("--seed", type=int, default=None, help="root seed (derived and printed if omitted)")
    p.add_argument("--out", default=None, help="output path or prefix")
    if graph:
        p.add_argument("--in", dest="input", default=None, help="graph file (edge list or JSON)")


def _scheme_flags(p: argparse.ArgumentParser):
    p.add_argument("--scheme", choices=list(KINDS) + ["explicit-centers"], default="doubling")
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--r", type=int, default=None, help="excluded clique size (minor-free)")
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--centers", default=None, help="whitespace separated center list (centers/cones schemes)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="strongpad", description="Strong-diameter padded decompositions and sparse covers.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a test-family graph")
    _common(p, graph=False)
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--radius", type=float)
    p.add_argument("--weights", choices=["unit", "uniform"], default="unit")
    p.add_argument("--low", type=float, default=1.0)
    p.add_argument("--high", type=float, default=1.0)
    p.add_argument("--format", choices=["json", "edgelist", "dot"], default=None)
    p.add_argument("--hexfloat", action="store_true", help="write weights as hexfloats")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("decompose", help="sample one partition; writes partition, trace and report")
    _common(p)
    _scheme_flags(p)
    p.add_argument("--format", choices=["json", "dot"], default="json", help="also write a DOT figure with 'dot'")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("cover", help="build a sparse cover")
    _common(p)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--m", type=int, default=None, help="number of partitions (automatic if omitted)")
    p.add_argument("--budget", type=int, default=None, help="resampling budget (default 10 |Y|)")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("verify", help="structural checks and Monte-Carlo estimates")
    p.add_argument("what", choices=["padding", "separating", "partition", "cover"])
    _common(p)
    _scheme_flags(p)
    p.add_argument("--gamma", type=float, action="append", help="padding radius in units of delta (repeatable)")
    p.add_argument("--max-gamma", type=float, default=None, help="override the guaranteed gamma range")
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--m", type=int, default=None, help="overlap bound for 'verify cover'")
    p.add_argument("--bound", type=float, default=None, help="diameter bound for 'verify partition'")
    p.add_argument("--partition", default=None)
    p.add_argument("--cover", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="padding sweep over families and schemes, appended to a CSV")
    _common(p, graph=False)
    p.add_argument("--family", choices=FAMILIES, action="append")
    p.add_argument("--n", type=int, action="append")
    p.add_argument("--scheme", dest="scheme_list", choices=KINDS, action="append")
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--r", type=int, default=5)
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--gamma", type=float, action="append")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--format", choices=["csv"], default="csv")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        ap.error(str(e))
    except (PreconditionError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
