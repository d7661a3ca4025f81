"""Center-based strong-diameter clustering.

Two engines share the :class:`Partition` output type:

* starting times: every center ``x`` draws ``δ_x`` and vertex ``v`` joins the
  center maximising ``δ_x - d(x, v)``; one multi-source search with offsets
  ``-δ_x`` realises the argmax exactly.
* cones: centers are processed in order, each carving
  ``{v ∈ S : d_S(v, x_i) - d_S(v, N ∩ S) <= R_i}`` out of the active set ``S``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .graph import INF, Graph, PreconditionError, shortest_paths
from .nets import CenterSet, default_lambda, measure
from .rng import Rng, TexpParams, texp_sample

STARTING_TIMES = "starting-times"
CONES = "cones"
MINOR_FREE = "minor-free"


@dataclass
class Cluster:
    center: int
    members: list[int]
    radius: float
    core: int | None = None  # index of the enclosing core cluster (minor-free only)


@dataclass
class Partition:
    n: int
    delta: float
    engine: str
    clusters: list[Cluster]
    meta: dict = field(default_factory=dict, compare=False)
    _assign: np.ndarray | None = field(default=None, repr=False, compare=False)

    @property
    def assignment(self) -> np.ndarray:
        """Per-vertex cluster id (``-1`` for vertices left out)."""
        if self._assign is None:
            a = np.full(self.n, -1, dtype=np.int64)
            for cid, c in enumerate(self.clusters):
                a[c.members] = cid
            self._assign = a
        return self._assign

    def cluster_of(self, v: int) -> Cluster:
        return self.clusters[int(self.assignment[v])]

    def members(self) -> list[set[int]]:
        return [set(c.members) for c in self.clusters]


@dataclass
class Trace:
    """Everything needed to replay a randomized decomposition bit-exactly.

    ``draws`` are unit-scale samples in ``[0, 1]`` (starting times ``δ'_x`` or
    carving radii); ``parts`` holds sub-traces of composite schemes.
    """

    seed: int
    labels: list
    engine: str
    delta: float
    lam: float | None
    centers: list[int]
    draws: list[float]
    parts: list["Trace"] = field(default_factory=list)
    extra: dict = field(default_factory=dict)


@dataclass
class PaddingWitness:
    v: int
    x1: int
    x2: int | None
    upsilon: float
    keys: list[tuple[float, int]] = field(default_factory=list, repr=False)


def _check_times(cs: CenterSet, times) -> list[float]:
    times = [float(t) for t in times]
    if len(times) != len(cs.centers):
        raise ValueError(f"need one starting time per center ({len(cs.centers)}), got {len(times)}")
    for t in times:
        if not 0.0 <= t <= cs.delta:
            raise ValueError(f"starting time {t} outside [0, {cs.delta}]")
    return times


def _require_covering(g: Graph, cs: CenterSet):
    if not cs.centers:
        raise ValueError("center set must be non-empty")
    if cs.covering is None:
        df = shortest_paths(g, [(x, 0.0) for x in cs.centers])
        cs.covering = max(df.dist) if g.n else 0.0
    if cs.covering > cs.delta:
        raise PreconditionError(
            f"covering radius {cs.covering} exceeds delta {cs.delta}; some vertex has no center within delta"
        )


def cluster_starting_times(g: Graph, cs: CenterSet, times) -> Partition:
    """Assign each vertex to ``argmax_x (δ_x - d(x, v))``, ties to the earlier center."""
    times = _check_times(cs, times)
    _require_covering(g, cs)
    df = shortest_paths(g, [(x, -t) for x, t in zip(cs.centers, times)])
    groups: list[list[int]] = [[] for _ in cs.centers]
    for v, pos in enumerate(df.origin):
        groups[pos].append(v)
    clusters = [Cluster(cs.centers[i], mem, times[i]) for i, mem in enumerate(groups) if mem]
    return Partition(g.n, cs.delta, STARTING_TIMES, clusters)


def _resolve_lambda(g: Graph, cs: CenterSet, lam: float | None) -> tuple[float, bool]:
    if cs.tau is None or cs.covering is None:
        measure(g, cs)
    _require_covering(g, cs)
    if lam is None:
        return default_lambda(cs.tau), True
    if not lam > 0:
        raise ValueError("lambda must be positive")
    return float(lam), False


def padded_decompose(g: Graph, cs: CenterSet, lam: float | None, rng: Rng) -> tuple[Partition, Trace]:
    """Sample ``δ'_x ~ Texp(λ)`` per center and cluster by starting times ``δ'_x Δ``."""
    lam, is_default = _resolve_lambda(g, cs, lam)
    draws = texp_sample(TexpParams(lam), rng, size=len(cs.centers))
    p = cluster_starting_times(g, cs, draws * cs.delta)
    p.meta.update(lam=lam, tau=cs.tau, covering=cs.covering, default_lambda=is_default)
    tr = Trace(rng.seed, list(rng.labels), STARTING_TIMES, cs.delta, lam, list(cs.centers), draws.tolist())
    return p, tr


def padding_witness(g: Graph, cs: CenterSet, times, v: int) -> PaddingWitness:
    """Top two centers at ``v`` under ``δ_x - d(x, v)`` and their gap Υ.

    Every ``u`` with ``d(v, u) < Υ/2`` lies in the cluster of ``x1``.
    """
    times = _check_times(cs, times)
    keys = []
    for pos, (x, t) in enumerate(zip(cs.centers, times)):
        d = shortest_paths(g, [(x, 0.0)], targets=[v]).dist[v]
        keys.append((t - d if d < INF else -INF, pos))
    keys.sort(key=lambda kp: (-kp[0], kp[1]))
    x1 = cs.centers[keys[0][1]]
    if len(keys) < 2:
        return PaddingWitness(v, x1, None, INF, keys)
    x2 = cs.centers[keys[1][1]]
    gap = keys[0][0] - keys[1][0] if keys[1][0] > -INF else INF
    return PaddingWitness(v, x1, x2, gap, keys)


def carve_cones(g: Graph, cs: CenterSet, radii) -> Partition:
    """Deterministic cone carving given one radius per center.

    Only vertices within ``Δ + R_i`` of ``x_i`` in ``G[S]`` can satisfy the cone
    rule, and their nearest active center lies within ``3Δ`` of ``x_i``, so
    both searches of a round stay inside the ``3Δ`` ball around ``x_i``.
    """
    radii = [float(r) for r in radii]
    if len(radii) != len(cs.centers):
        raise ValueError("need one radius per center")
    _require_covering(g, cs)
    delta = cs.delta
    n = g.n
    alive = bytearray(b"\x01") * n
    is_center = bytearray(n)
    for x in cs.centers:
        is_center[x] = 1
    clusters = []
    left = n
    for x, r in zip(cs.centers, radii):
        if not alive[x]:
            continue
        sx = shortest_paths(g, [(x, 0.0)], restrict=alive, limit=3 * delta)
        dx = sx.dist
        region = bytearray(n)
        region_centers = []
        cand = []
        for u in sx.order:
            region[u] = 1
            if is_center[u]:
                region_centers.append(u)
            if dx[u] <= delta + r:
                cand.append(u)
        dn = shortest_paths(g, [(c, 0.0) for c in sorted(region_centers)], restrict=region).dist
        members = sorted(u for u in cand if dx[u] - dn[u] <= r)
        for u in members:
            alive[u] = 0
        left -= len(members)
        clusters.append(Cluster(x, members, r))
    if left:
        raise PreconditionError(f"{left} vertices left unclustered; covering precondition violated")
    return Partition(n, delta, CONES, clusters)


def cone_partition(g: Graph, cs: CenterSet, lam: float | None, rng: Rng) -> tuple[Partition, Trace]:
    """Cone carving with ``R_i = δ_i Δ``, ``δ_i ~ Texp(λ)``.

    One radius is drawn per center up front (skipped centers simply leave
    theirs unused), which keeps replays independent of the carving order.
    """
    lam, is_default = _resolve_lambda(g, cs, lam)
    draws = texp_sample(TexpParams(lam), rng, size=len(cs.centers))
    p = carve_cones(g, cs, draws * cs.delta)
    p.meta.update(lam=lam, tau=cs.tau, covering=cs.covering, default_lambda=is_default)
    tr = Trace(rng.seed, list(rng.labels), CONES, cs.delta, lam, list(cs.centers), draws.tolist())
    return p, tr


def padding_floor(gamma: float, lam: float, tau: int, engine: str = STARTING_TIMES, default: bool = True) -> float:
    """Guaranteed probability that ``B(v, γΔ)`` stays in one cluster.

    With the default rate this is ``e^{-4γλ}`` (``e^{-8γλ}`` for cones); with a
    user rate the per-vertex form ``1 - (1 - e^{-2γλ})(1 + τ/(e^λ - 1))`` is
    used instead (``4γλ`` in the exponent for cones), clipped at 0.
    """
    k = 2.0 if engine == STARTING_TIMES else 4.0
    if default:
        return math.exp(-2 * k * gamma * lam)
    cut = (1 - math.exp(-k * gamma * lam)) * (1 + tau / math.expm1(lam))
    return max(0.0, 1.0 - cut)
