"""Center sets: greedy nets and the covering/packing measurements."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .graph import INF, Graph, shortest_paths


@dataclass
class CenterSet:
    """Ordered centers at scale ``delta``.

    The list order is the tie-break order used by every clustering engine.
    ``covering`` and ``tau`` are filled in by :func:`measure`.
    """

    centers: list[int]
    delta: float
    covering: float | None = None
    tau: int | None = None
    reach: dict[int, list[tuple[int, float]]] = field(default_factory=dict, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.centers)

    def to_json(self) -> dict:
        out = {"centers": list(self.centers), "delta": self.delta}
        if self.covering is not None:
            out["covering"] = self.covering
            out["tau"] = self.tau
        return out

    @classmethod
    def from_json(cls, data: dict) -> "CenterSet":
        return cls([int(c) for c in data["centers"]], float(data["delta"]),
                   data.get("covering"), data.get("tau"))


def greedy_net(g: Graph, delta: float) -> CenterSet:
    """Scan vertices in index order; keep ``v`` unless a kept point is within ``delta``."""
    if not delta > 0:
        raise ValueError("delta must be positive")
    covered = [INF] * g.n
    net = []
    for v in range(g.n):
        if covered[v] <= delta:
            continue
        net.append(v)
        df = shortest_paths(g, [(v, 0.0)], limit=delta)
        for u in df.order:
            if df.dist[u] < covered[u]:
                covered[u] = df.dist[u]
    return CenterSet(net, float(delta))


def net_on_path(g: Graph, path: list[int], delta: float) -> list[int]:
    """Greedy ``delta``-net of a shortest path, scanned from its first vertex.

    Distances between path vertices are measured along the path, which is
    exact for a shortest path.
    """
    if not path:
        raise ValueError("path must be non-empty")
    pos = [0.0]
    for a, b in zip(path, path[1:]):
        w = g.weight(a, b)
        if w is None:
            raise ValueError(f"consecutive path vertices {a}, {b} are not adjacent")
        pos.append(pos[-1] + w)
    chosen = [path[0]]
    last = 0.0
    for v, p in zip(path[1:], pos[1:]):
        if p - last > delta:
            chosen.append(v)
            last = p
    return chosen


def center_reach(g: Graph, centers: list[int], radius: float, restrict=None) -> dict[int, list[tuple[int, float]]]:
    """For every vertex, the centers within ``radius`` as ``(position, d(x, v))``.

    Distances are computed from the center outwards, the same orientation the
    clustering engines use.
    """
    reach: dict[int, list[tuple[int, float]]] = {}
    for pos, x in enumerate(centers):
        df = shortest_paths(g, [(x, 0.0)], restrict=restrict, limit=radius)
        for u in df.order:
            reach.setdefault(u, []).append((pos, df.dist[u]))
    return reach


def _measure(g: Graph, cs: CenterSet):
    if not cs.centers:
        raise ValueError("center set must be non-empty")
    df = shortest_paths(g, [(x, 0.0) for x in cs.centers])
    covering = max(df.dist) if g.n else 0.0
    reach = center_reach(g, cs.centers, 3 * cs.delta)
    tau = max((len(r) for r in reach.values()), default=0)
    return covering, tau, reach


def check_centers(g: Graph, cs: CenterSet) -> tuple[float, int]:
    """Exact covering radius ``max_v d(v, N)`` and packing ``max_v |B(v, 3Δ) ∩ N|``."""
    covering, tau, _ = _measure(g, cs)
    return covering, tau


def measure(g: Graph, cs: CenterSet, keep_reach: bool = False) -> CenterSet:
    """Fill ``covering`` and ``tau`` in place (optionally caching the 3Δ reach)."""
    cs.covering, cs.tau, reach = _measure(g, cs)
    if keep_reach:
        cs.reach = reach
    return cs


def default_lambda(tau: int) -> float:
    """``2 + 2 ln τ``, floored at ``τ = e`` so the rate is at least 4."""
    return 2.0 + 2.0 * math.log(max(tau, math.e))
