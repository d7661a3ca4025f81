"""Sparse covers from several starting-time partitions glued by Moser-Tardos resampling.

Bad event ``Φ_y`` (one per point ``y`` of a ``Δ/β``-net ``Y``): in every one of
the ``m`` partitions the gap between the two best keys at ``y`` is below
``4Δ/β``.  ``Φ_y`` only reads the starting times of centers within ``3Δ`` of
``y``, so resampling those variables (in every partition) is the local fix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .clustering import STARTING_TIMES, Trace, cluster_starting_times, padding_witness
from .graph import Graph
from .nets import CenterSet, default_lambda, greedy_net, measure
from .rng import Rng, TexpParams, texp_quantile

ALPHA = 64
MAX_ATTEMPTS = 6


@dataclass
class CoverCluster:
    members: list[int]
    partition: int
    center: int


@dataclass
class Cover:
    n: int
    delta: float
    padding_radius: float
    m: int
    clusters: list[CoverCluster]
    trace: Trace | None = field(default=None, compare=False, repr=False)

    @property
    def membership(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for cid, c in enumerate(self.clusters):
            for v in c.members:
                out[v].append(cid)
        return out


def gap_padded(g: Graph, cs: CenterSet, times, v: int, threshold: float) -> bool:
    """True iff the witness gap at ``v`` reaches ``threshold`` (closed comparison)."""
    return padding_witness(g, cs, times, v).upsilon >= threshold


class _Variables:
    """One independent stream per ``(partition, center)`` variable."""

    def __init__(self, rng: Rng, m: int, k: int, lam: float):
        self.rng = rng
        self.law = TexpParams(lam)
        self.streams = [[rng.fork(i, pos) for pos in range(k)] for i in range(m)]
        self.values = np.empty((m, k))
        self.redraw(range(k))

    def redraw(self, positions):
        """Fresh draws for the given centers in every partition."""
        cells = [(i, pos) for pos in positions for i in range(len(self.streams))]
        u = np.array([self.streams[i][pos].uniform() for i, pos in cells])
        y = texp_quantile(self.law, u)
        for (i, pos), val in zip(cells, y.tolist()):
            self.values[i, pos] = val


def _attempt(g, N: CenterSet, Y: list[int], m: int, budget: int, threshold: float, lam: float, rng: Rng):
    reach = N.reach
    local = [reach.get(y, []) for y in Y]
    pos_of = [np.array([p for p, _ in loc], dtype=np.int64) for loc in local]
    dist_of = [np.array([d for _, d in loc]) for loc in local]
    var = _Variables(rng, m, len(N.centers), lam)
    events_of: dict[int, list[int]] = {}
    for j, loc in enumerate(local):
        for pos, _ in loc:
            events_of.setdefault(pos, []).append(j)

    def bad(j: int) -> bool:
        k = len(pos_of[j])
        if k < 2:
            return False  # a lone center pads y in every partition
        keys = var.values[:, pos_of[j]] * N.delta - dist_of[j]
        top = np.partition(keys, k - 2, axis=1)[:, k - 2:]
        return bool(np.all(top[:, 1] - top[:, 0] < threshold))

    violated = {j for j in range(len(Y)) if bad(j)}
    resamples = 0
    while violated and resamples < budget:
        j = min(violated)
        var.redraw([pos for pos, _ in local[j]])
        touched = set()
        for pos, _ in local[j]:
            touched.update(events_of[pos])
        resamples += 1
        for z in touched:
            if bad(z):
                violated.add(z)
            else:
                violated.discard(z)
    return var.values, resamples, sorted(violated), local, events_of


def sparse_cover(
    g: Graph,
    delta: float,
    t: float,
    m: int | None,
    budget: int | None,
    rng: Rng,
    alpha: float = ALPHA,
    ddim_hint: float | None = None,
) -> tuple[Cover | None, dict]:
    """Build a ``(4αt, m, 4Δ)``-style sparse cover; ``(None, report)`` if resampling gives up.

    With ``m=None`` the count starts at ``ceil(log2 |Y|) + 4`` and doubles after
    each exhausted budget.  ``budget`` defaults to ``10 |Y|`` resampling steps.
    """
    from .verify import check_cover

    if not delta > 0:
        raise ValueError("delta must be positive")
    if t < 1:
        raise ValueError("t must be at least 1")
    if m is not None and m < 1:
        raise ValueError("m must be positive")
    beta = alpha * t
    if beta < 4:
        raise ValueError("alpha * t must be at least 4 so that event locality holds")
    N = measure(g, greedy_net(g, delta), keep_reach=True)
    lam = default_lambda(N.tau)
    Y = greedy_net(g, delta / beta).centers
    budget = 10 * len(Y) if budget is None else int(budget)
    if budget < 1:
        raise ValueError("budget must be at least 1")
    threshold = 4 * delta / beta
    m_now = m if m is not None else math.ceil(math.log2(max(len(Y), 2))) + 4
    report = {
        "seed": rng.seed, "delta": delta, "t": t, "alpha": alpha, "beta": beta, "lam": lam,
        "tau": N.tau, "centers": len(N.centers), "net_points": len(Y), "budget": budget,
        "threshold": threshold, "padding_radius": delta / beta, "attempts": [],
    }
    values = None
    for attempt in range(1 if m is not None else MAX_ATTEMPTS):
        values, resamples, surviving, local, events_of = _attempt(
            g, N, Y, m_now, budget, threshold, lam, rng.fork("attempt", attempt)
        )
        report["attempts"].append({"m": m_now, "resamples": resamples, "surviving": len(surviving)})
        if not surviving:
            break
        m_now *= 2
    else:
        m_now = report["attempts"][-1]["m"]
    degrees = [len({z for pos, _ in loc for z in events_of[pos]} - {j}) for j, loc in enumerate(local)]
    report.update(
        m=m_now, resamples=resamples, success=not surviving, surviving_events=[Y[j] for j in surviving],
        dependency_degree_max=max(degrees, default=0),
        dependency_degree_mean=float(np.mean(degrees)) if degrees else 0.0,
    )
    if ddim_hint is not None:
        shape = 2 ** (ddim_hint / t) * ddim_hint * max(1.0, math.log2(t))
        report.update(ddim_hint=ddim_hint, m_shape=shape, m_exceeds_shape=m_now > shape)
    if surviving:
        return None, report

    clusters = []
    parts = []
    for i in range(m_now):
        p = cluster_starting_times(g, N, values[i] * delta)
        clusters.extend(CoverCluster(c.members, i, c.center) for c in p.clusters)
        parts.append(Trace(rng.seed, list(rng.labels) + [i], STARTING_TIMES, delta, lam, list(N.centers),
                           values[i].tolist()))
    trace = Trace(rng.seed, list(rng.labels), "sparse-cover", delta, lam, list(N.centers), [], parts,
                  {"t": t, "alpha": alpha, "m": m_now})
    cover = Cover(g.n, float(delta), delta / beta, m_now, clusters, trace)
    chk = check_cover(g, cover, beta, m_now)
    report["valid"] = chk.ok
    if not chk.ok:
        report["success"] = False
        report["check"] = chk.summary()
        return None, report
    return cover, report
