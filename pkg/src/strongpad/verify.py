"""Exact structural checks and Monte-Carlo estimates of padding / cut probabilities.

The structural checks only use graph primitives (balls, induced diameters);
they never look inside the algorithm that produced the partition or cover.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.stats import binomtest

from .graph import Graph, shortest_paths, strong_diameter
from .rng import Rng
from .schemes import Sampler, SchemeConfig

FULL_SWEEP_MAX = 2000
SAMPLE_SIZE = 500
Z = 3.0  # standard errors of slack in the statistical gates
FITTED_C_MAX = 16.0


@dataclass
class PartitionCheck:
    ok: bool
    bound: float
    diameters: list[float]
    missing: list[int] = field(default_factory=list)
    duplicated: list[int] = field(default_factory=list)
    disconnected: list[int] = field(default_factory=list)
    too_wide: list[int] = field(default_factory=list)

    def summary(self) -> str:
        if self.ok:
            return f"ok: {len(self.diameters)} clusters, max strong diameter {max(self.diameters, default=0.0):g} <= {self.bound:g}"
        parts = []
        if self.missing:
            parts.append(f"unassigned vertices {self.missing[:10]}")
        if self.duplicated:
            parts.append(f"vertices in several clusters {self.duplicated[:10]}")
        if self.disconnected:
            parts.append(f"disconnected clusters {self.disconnected[:10]}")
        if self.too_wide:
            parts.append(f"clusters over the bound {self.too_wide[:10]}")
        return "FAIL: " + "; ".join(parts)


def check_partition(g: Graph, p, bound: float) -> PartitionCheck:
    """Disjointness, completeness, induced connectivity and strong diameter <= bound."""
    count = np.zeros(g.n, dtype=np.int64)
    diam = []
    disconnected, too_wide = [], []
    for cid, c in enumerate(p.clusters):
        mem = list(c.members)
        if any(not 0 <= v < g.n for v in mem):
            raise ValueError(f"cluster {cid} has vertices outside the graph")
        np.add.at(count, mem, 1)
        d = strong_diameter(g, mem) if mem else 0.0
        diam.append(d)
        if math.isinf(d):
            disconnected.append(cid)
        elif d > bound:
            too_wide.append(cid)
    missing = np.flatnonzero(count == 0).tolist()
    dup = np.flatnonzero(count > 1).tolist()
    ok = not (missing or dup or disconnected or too_wide)
    return PartitionCheck(ok, bound, diam, missing, dup, disconnected, too_wide)


@dataclass
class CoverCheck:
    ok: bool
    bound: float
    padding_radius: float
    max_overlap: int
    min_overlap: int
    wide_clusters: list[int] = field(default_factory=list)
    unpadded: list[int] = field(default_factory=list)
    overlap_violations: list[int] = field(default_factory=list)

    def summary(self) -> str:
        head = "ok" if self.ok else "FAIL"
        return (f"{head}: diameter<= {self.bound:g} violations {len(self.wide_clusters)}, "
                f"unpadded vertices {self.unpadded[:10]}, overlap in [{self.min_overlap}, {self.max_overlap}]")


def check_cover(g: Graph, c, beta: float, s: int) -> CoverCheck:
    """Bounded strong diameter (4Δ), a cluster holding ``B(v, Δ/β)`` for every ``v``, overlap <= s."""
    bound = 4 * c.delta
    radius = c.delta / beta
    wide = [i for i, cl in enumerate(c.clusters) if strong_diameter(g, cl.members) > bound]
    sets = [set(cl.members) for cl in c.clusters]
    member_of: list[list[int]] = [[] for _ in range(g.n)]
    for i, cl in enumerate(c.clusters):
        for v in cl.members:
            member_of[v].append(i)
    unpadded = []
    for v in range(g.n):
        b = shortest_paths(g, [(v, 0.0)], limit=radius).order
        if not any(all(u in sets[i] for u in b) for i in member_of[v]):
            unpadded.append(v)
    counts = [len(x) for x in member_of]
    over = [v for v, k in enumerate(counts) if k > s]
    ok = not (wide or unpadded or over)
    return CoverCheck(ok, bound, radius, max(counts, default=0), min(counts, default=0), wide, unpadded, over)


def wilson(k: int, n: int, level: float = 0.95) -> tuple[float, float]:
    ci = binomtest(int(k), int(n)).proportion_ci(confidence_level=level, method="wilson")
    return float(ci.low), float(ci.high)


@dataclass
class PaddingReport:
    scheme: dict
    seed: int
    trials: int
    vertices: int
    gammas: list[float]
    frequency: list[float]  # pooled over sampled vertices
    interval: list[tuple[float, float]]
    worst: list[float]  # smallest per-vertex frequency
    worst_vertex: list[int]
    floor: list[float | None]
    stderr: list[float | None]
    passed: list[bool]
    beta: float | None
    lam: float | None
    tau: int | None
    fitted_c: float | None = None
    monotone: bool = True

    @property
    def ok(self) -> bool:
        return all(self.passed)

    def to_json(self) -> dict:
        return asdict(self)

    def table(self) -> str:
        rows = [f"{'gamma':>10} {'freq':>8} {'wilson95':>19} {'worst':>8} {'floor':>8} {'pass':>5}"]
        for i, gm in enumerate(self.gammas):
            lo, hi = self.interval[i]
            fl = "-" if self.floor[i] is None else f"{self.floor[i]:.4f}"
            rows.append(f"{gm:>10.5f} {self.frequency[i]:>8.4f} [{lo:.4f}, {hi:.4f}] "
                        f"{self.worst[i]:>8.4f} {fl:>8} {'yes' if self.passed[i] else 'NO':>5}")
        tail = f"scheme={self.scheme['kind']} trials={self.trials} seed={self.seed} vertices={self.vertices}"
        if self.beta is not None:
            tail += f" beta={self.beta:.3f} lambda={self.lam:.3f} tau={self.tau}"
        if self.fitted_c is not None:
            tail += f" fitted_c={self.fitted_c:.3f} monotone={self.monotone}"
        return "\n".join(rows + [tail])


def _sample_vertices(g: Graph, rng: Rng, sample) -> np.ndarray:
    if sample is not None:
        return np.asarray(sorted(set(int(v) for v in sample)), dtype=np.int64)
    if g.n <= FULL_SWEEP_MAX:
        return np.arange(g.n)
    return np.sort(rng.fork("vertices").generator.choice(g.n, size=SAMPLE_SIZE, replace=False))


def _ball_pairs(g: Graph, verts: np.ndarray, radius: float) -> tuple[np.ndarray, np.ndarray]:
    vi, us = [], []
    for i, v in enumerate(verts.tolist()):
        b = shortest_paths(g, [(v, 0.0)], limit=radius).order
        vi.extend([i] * len(b))
        us.extend(b)
    return np.asarray(vi, dtype=np.int64), np.asarray(us, dtype=np.int64)


def _padding_chunk(sampler: Sampler, seed: int, labels: tuple, trial_ids, verts, pairs):
    k = len(verts)
    counts = np.zeros((len(pairs), k), dtype=np.int64)
    root = Rng(seed, labels)
    for t in trial_ids:
        part, _ = sampler.sample(root.fork("trial", t))
        a = part.assignment
        av = a[verts]
        for gi, (vi, us) in enumerate(pairs):
            cut = np.bincount(vi, weights=(a[us] != av[vi]), minlength=k) > 0
            counts[gi] += ~cut
    return counts


def _run_chunks(fn, args, trials: int, threads: int):
    ids = list(range(trials))
    if threads <= 1:
        return [fn(*args[:3], ids, *args[3:])]
    chunks = [ids[i::threads] for i in range(threads)]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        futs = [ex.submit(fn, *args[:3], c, *args[3:]) for c in chunks]
        return [f.result() for f in futs]


def estimate_padding(
    g: Graph,
    scheme: SchemeConfig,
    gammas,
    trials: int,
    rng: Rng,
    sample=None,
    max_gamma: float | None = None,
    threads: int = 1,
) -> PaddingReport:
    """Empirical ``Pr[B(v, γΔ) ⊆ P(v)]`` per γ over ``trials`` fresh partitions.

    Trial ``t`` always uses substream ``("trial", t)`` so results do not depend
    on ``threads``.  A γ passes when the worst sampled vertex is at least
    ``floor - 3 SE`` (``SE`` the binomial standard error at the floor).  For the
    minor-free scheme, which has no published constant, a γ passes when
    frequencies decay monotonically and the fitted ``c`` in ``1 - c r γ`` stays
    at most 16.
    """
    if trials < 100:
        raise ValueError("need at least 100 trials")
    sampler = Sampler(g, scheme)
    gmax = sampler.max_gamma() if max_gamma is None else max_gamma
    gammas = [float(x) for x in gammas]
    for gm in gammas:
        if not 0 <= gm <= gmax:
            raise ValueError(f"gamma {gm} outside the guaranteed range [0, {gmax:g}] for {scheme.kind}")
    verts = _sample_vertices(g, rng, sample)
    pairs = [_ball_pairs(g, verts, gm * scheme.delta) for gm in gammas]
    chunks = _run_chunks(_padding_chunk, (sampler, rng.seed, rng.labels, verts, pairs), trials, threads)
    counts = sum(chunks)
    k = len(verts)
    freq, interval, worst, worst_v, floors, ses, passed = [], [], [], [], [], [], []
    for gi, gm in enumerate(gammas):
        total = int(counts[gi].sum())
        freq.append(total / (trials * k))
        interval.append(wilson(total, trials * k))
        per_v = counts[gi] / trials
        j = int(np.argmin(per_v))
        worst.append(float(per_v[j]))
        worst_v.append(int(verts[j]))
        fl = sampler.floor(gm)
        floors.append(fl)
        if fl is None:
            ses.append(None)
        else:
            se = math.sqrt(fl * (1 - fl) / trials)
            ses.append(se)
            passed.append(worst[-1] >= fl - Z * se)
    monotone = all(freq[i] >= freq[j] for i in range(len(gammas)) for j in range(len(gammas)) if gammas[i] <= gammas[j])
    fitted = None
    if scheme.kind == "minor-free":
        fitted = max(((1 - w) / (scheme.r * gm) for w, gm in zip(worst, gammas) if gm > 0), default=0.0)
        passed = [monotone and fitted <= FITTED_C_MAX] * len(gammas)
    return PaddingReport(
        scheme.to_json(), rng.seed, trials, k, gammas, freq, interval, worst, worst_v, floors, ses,
        passed, sampler.beta(), sampler.lam, sampler.tau, fitted, monotone,
    )


@dataclass
class CutReport:
    scheme: dict
    seed: int
    trials: int
    beta: float
    edges: list[tuple[int, int, float]]
    frequency: list[float]
    bound: list[float]
    margin: float  # max over edges of frequency - bound - 3 SE (<= 0 means pass)
    worst_edge: int
    violations: list[int]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return asdict(self)

    def table(self) -> str:
        e = self.edges[self.worst_edge] if self.edges else None
        return (f"scheme={self.scheme['kind']} trials={self.trials} seed={self.seed} beta={self.beta:.3f} "
                f"edges={len(self.edges)} violations={len(self.violations)} worst-margin={self.margin:.4f} "
                f"worst-edge={e}")


def _cut_chunk(sampler: Sampler, seed: int, labels: tuple, trial_ids, eu, ev):
    counts = np.zeros(len(eu), dtype=np.int64)
    root = Rng(seed, labels)
    for t in trial_ids:
        part, _ = sampler.sample(root.fork("trial", t))
        a = part.assignment
        counts += a[eu] != a[ev]
    return counts


def estimate_separating(
    g: Graph, scheme: SchemeConfig, trials: int, rng: Rng, beta: float | None = None, threads: int = 1
) -> CutReport:
    """Per-edge cut frequency against ``min(1, β w(e)/Δ)`` (β defaults to the scheme's)."""
    if trials < 100:
        raise ValueError("need at least 100 trials")
    sampler = Sampler(g, scheme)
    beta = sampler.beta() if beta is None else float(beta)
    if beta is None:
        raise ValueError("this scheme has no built-in beta; pass one explicitly")
    eu, ev, w = g.edge_arrays()
    counts = sum(_run_chunks(_cut_chunk, (sampler, rng.seed, rng.labels, eu, ev), trials, threads))
    freq = counts / trials
    bound = np.minimum(1.0, beta * w / scheme.delta)
    se = np.sqrt(bound * (1 - bound) / trials)
    slack = freq - bound - Z * se
    viol = np.flatnonzero(slack > 0).tolist()
    j = int(np.argmax(slack)) if len(slack) else 0
    return CutReport(
        scheme.to_json(), rng.seed, trials, beta, list(g.edges()), freq.tolist(), bound.tolist(),
        float(slack[j]) if len(slack) else 0.0, j, viol,
    )
