"""Decomposition schemes assembled from the clustering engines.

* doubling: greedy Δ-net centers + starting-time clustering (strong 4Δ).
* centers / cones: caller-chosen (or greedy) centers with either engine.
* minor-free: Core-Partition at radius Δ/8, then every core cluster is split
  with starting times around Δ/8-nets of its skeleton paths at scale Δ/4,
  so every final cluster has strong diameter at most Δ.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .clustering import (
    CONES,
    MINOR_FREE,
    STARTING_TIMES,
    Cluster,
    Partition,
    Trace,
    carve_cones,
    cluster_starting_times,
    cone_partition,
    padded_decompose,
    padding_floor,
)
from .core import core_partition
from .graph import Graph, PreconditionError
from .nets import CenterSet, default_lambda, greedy_net, measure, net_on_path
from .rng import Rng

KINDS = ("doubling", "minor-free", "centers", "cones")
_ALIASES = {"explicit-centers": "centers"}

# Constants of the core-to-padded step: path nets at Δ/8, sub-scale Δ/4.
PATH_NET_FRACTION = 8
SUB_SCALE_FRACTION = 4


@dataclass
class SchemeConfig:
    kind: str
    delta: float
    r: int | None = None
    lam: float | None = None
    seed: int = 0
    centers: list[int] | None = None

    def __post_init__(self):
        self.kind = _ALIASES.get(self.kind, self.kind)
        if self.kind not in KINDS:
            raise ValueError(f"unknown scheme {self.kind!r}; choose one of {', '.join(KINDS)}")
        if not (self.delta > 0 and math.isfinite(self.delta)):
            raise ValueError(f"delta must be positive and finite, got {self.delta}")
        if self.kind == "minor-free":
            if self.r is None:
                raise ValueError("the minor-free scheme needs r (the excluded clique size)")
            if self.r < 2:
                raise ValueError(f"r must be at least 2, got {self.r}")
        if self.lam is not None and not self.lam > 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "SchemeConfig":
        fields = {k: data[k] for k in ("kind", "delta", "r", "lam", "seed", "centers") if k in data}
        return cls(**fields)


def decompose_doubling(g: Graph, delta: float, rng: Rng, lam: float | None = None) -> tuple[Partition, Trace]:
    cs = measure(g, greedy_net(g, delta))
    return padded_decompose(g, cs, lam, rng)


def core_to_padded(
    g: Graph, cluster, core: list[list[int]], delta: float, rng: Rng, lam: float | None = None
) -> tuple[Partition, Trace]:
    """Split one core cluster into strongly ``delta``-bounded pieces.

    Centers are the union of greedy ``Δ/8``-nets of the core paths; the
    starting-time engine then runs on ``G[cluster]`` at scale ``Δ/4``.
    Requires every cluster vertex within ``Δ/8`` of the core so the covering
    radius stays at most ``Δ/4``.
    """
    sub, keep, cs = _core_centers(g, cluster, core, delta)
    measure(sub, cs)
    if cs.covering > cs.delta:
        raise PreconditionError(
            f"cluster vertex at distance {cs.covering} from every center exceeds {cs.delta}; "
            "core radius property violated"
        )
    p, tr = padded_decompose(sub, cs, lam, rng)
    clusters = [Cluster(keep[c.center], [keep[v] for v in c.members], c.radius) for c in p.clusters]
    out = Partition(g.n, delta, STARTING_TIMES, clusters, dict(p.meta))
    tr.centers = [keep[c] for c in tr.centers]
    return out, tr


def _core_centers(g: Graph, cluster, core, delta):
    sub, keep = g.subgraph(cluster)
    index = {v: i for i, v in enumerate(keep)}
    centers: list[int] = []
    seen = set()
    for path in core:
        try:
            local = [index[v] for v in path]
        except KeyError as e:
            raise ValueError(f"core path vertex {e.args[0]} is not in the cluster") from None
        for c in net_on_path(sub, local, delta / PATH_NET_FRACTION):
            if c not in seen:
                seen.add(c)
                centers.append(c)
    return sub, keep, CenterSet(centers, delta / SUB_SCALE_FRACTION)


def decompose_minor_free(
    g: Graph, delta: float, r: int, rng: Rng, lam: float | None = None
) -> tuple[Partition, Trace]:
    if not delta > 0:
        raise ValueError("delta must be positive")
    cp, radii = core_partition(g, delta / PATH_NET_FRACTION, r, rng.fork("core"))
    clusters: list[Cluster] = []
    parts: list[Trace] = []
    taus = []
    for i, cc in enumerate(cp.clusters):
        p, tr = core_to_padded(g, cc.members, cc.skeleton.paths, delta, rng.fork("sub", i), lam)
        for c in p.clusters:
            c.core = i
        clusters.extend(p.clusters)
        parts.append(tr)
        taus.append(p.meta["tau"])
    part = Partition(
        g.n,
        float(delta),
        MINOR_FREE,
        clusters,
        {
            "r": r,
            "core_clusters": len(cp.clusters),
            "max_skeleton_paths": max((len(c.skeleton.paths) for c in cp.clusters), default=0),
            "max_neighbors": max((len(c.skeleton.neighbors) for c in cp.clusters), default=0),
            "tau_max": max(taus, default=0),
            "lam": lam,
        },
    )
    trace = Trace(rng.seed, list(rng.labels), MINOR_FREE, float(delta), lam, [], radii, parts, {"r": r})
    part.meta["core"] = cp
    return part, trace


def as_separating_bound(beta: float, delta_param: float) -> float:
    """Separating parameter implied by a ``(β, δ)``-padded decomposition (needs ``δ >= 1/β``)."""
    if not beta > 0:
        raise ValueError("beta must be positive")
    if delta_param < 1.0 / beta:
        raise ValueError(f"padding range {delta_param} is below 1/beta = {1.0 / beta}")
    return float(beta)


class Sampler:
    """Draws independent partitions for one (graph, config) pair.

    Deterministic set-up (nets, τ, λ) happens once in the constructor.
    """

    def __init__(self, g: Graph, cfg: SchemeConfig):
        self.g = g
        self.cfg = cfg
        self.centers: CenterSet | None = None
        self.lam = cfg.lam
        if cfg.kind != "minor-free":
            cs = CenterSet(list(cfg.centers), cfg.delta) if cfg.centers is not None else greedy_net(g, cfg.delta)
            measure(g, cs)
            if cs.covering > cs.delta:
                raise PreconditionError(f"covering radius {cs.covering} exceeds delta {cs.delta}")
            self.centers = cs
            self.lam = default_lambda(cs.tau) if cfg.lam is None else cfg.lam

    @property
    def engine(self) -> str:
        return {"cones": CONES, "minor-free": MINOR_FREE}.get(self.cfg.kind, STARTING_TIMES)

    @property
    def tau(self) -> int | None:
        return None if self.centers is None else self.centers.tau

    def beta(self) -> float | None:
        """Padding exponent in force (``e^{-βγ}``); ``None`` for minor-free (fitted only)."""
        if self.centers is None:
            return None
        return (4.0 if self.engine == STARTING_TIMES else 8.0) * self.lam

    def floor(self, gamma: float) -> float | None:
        if self.centers is None:
            return None
        return padding_floor(gamma, self.lam, self.centers.tau, self.engine, self.cfg.lam is None)

    def max_gamma(self) -> float:
        """Largest padding radius (in units of Δ) the scheme's guarantee covers."""
        if self.cfg.kind == "minor-free":
            return 1.0 / (8 * self.cfg.r)
        return 1.0 / 32 if self.cfg.kind == "cones" else 1.0 / 16

    def sample(self, rng: Rng) -> tuple[Partition, Trace]:
        cfg = self.cfg
        if cfg.kind == "minor-free":
            return decompose_minor_free(self.g, cfg.delta, cfg.r, rng, cfg.lam)
        if cfg.kind == "cones":
            return cone_partition(self.g, self.centers, self.lam, rng)
        return padded_decompose(self.g, self.centers, self.lam, rng)


def decompose(g: Graph, cfg: SchemeConfig, rng: Rng | None = None) -> tuple[Partition, Trace, dict]:
    """Run one scheme; returns the partition, its trace and a run report."""
    rng = rng if rng is not None else Rng(cfg.seed)
    sampler = Sampler(g, cfg)
    part, trace = sampler.sample(rng)
    report = {"config": cfg.to_json(), "seed": rng.seed, "engine": sampler.engine, "clusters": len(part.clusters)}
    if sampler.centers is not None:
        report.update(centers=len(sampler.centers), tau=sampler.tau, covering=sampler.centers.covering,
                      lam=sampler.lam, beta=sampler.beta())
    else:
        report.update({k: v for k, v in part.meta.items() if k != "core"})
    return part, trace, report


def replay(g: Graph, trace: Trace) -> Partition:
    """Rebuild a partition from its trace without drawing any randomness."""
    if trace.engine in (STARTING_TIMES, CONES):
        cs = CenterSet(list(trace.centers), trace.delta)
        scaled = [d * trace.delta for d in trace.draws]
        if trace.engine == CONES:
            return carve_cones(g, cs, scaled)
        return cluster_starting_times(g, cs, scaled)
    if trace.engine != MINOR_FREE:
        raise ValueError(f"unknown engine {trace.engine!r}")
    delta = trace.delta
    cp, _ = core_partition(g, delta / PATH_NET_FRACTION, int(trace.extra["r"]), None, radii=iter(trace.draws))
    if len(cp.clusters) != len(trace.parts):
        raise ValueError("trace does not match graph: core cluster count differs")
    clusters = []
    for i, (cc, sub_tr) in enumerate(zip(cp.clusters, trace.parts)):
        sub, keep, cs = _core_centers(g, cc.members, cc.skeleton.paths, delta)
        p = cluster_starting_times(sub, cs, [d * cs.delta for d in sub_tr.draws])
        clusters.extend(Cluster(keep[c.center], [keep[v] for v in c.members], c.radius, i) for c in p.clusters)
    return Partition(g.n, delta, MINOR_FREE, clusters)
