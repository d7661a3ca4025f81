"""Core-Partition: iterative skeleton-plus-buffer clustering for K_r-minor-free graphs.

Each round takes the residual component holding the smallest unclustered
vertex, roots a shortest-path tree at that vertex, keeps the tree paths to one
attachment vertex per neighbouring earlier cluster (the skeleton), and carves
everything within ``R_i Δ`` of the skeleton in the residual graph, with
``R_i ~ Texp_[0,1](2r)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _cc

from .graph import Graph, shortest_paths
from .rng import Rng, TexpParams, texp_sample


@dataclass
class Skeleton:
    root: int
    paths: list[list[int]]
    neighbors: list[int]  # ids of earlier clusters adjacent to the component

    def vertices(self) -> list[int]:
        seen = dict.fromkeys(v for p in self.paths for v in p)
        return list(seen)

    def edges(self) -> set[tuple[int, int]]:
        out = set()
        for p in self.paths:
            for a, b in zip(p, p[1:]):
                out.add((a, b) if a < b else (b, a))
        return out


@dataclass
class CoreCluster:
    members: list[int]
    skeleton: Skeleton
    radius: float  # unit-scale R_i in [0, 1]


@dataclass
class CorePartition:
    n: int
    delta: float
    r: int
    clusters: list[CoreCluster]
    skeleton_dist: list[float] = field(repr=False, default_factory=list)

    @property
    def assignment(self) -> np.ndarray:
        a = np.full(self.n, -1, dtype=np.int64)
        for i, c in enumerate(self.clusters):
            a[c.members] = i
        return a


def _residual_component(g: Graph, eu, ev, alive: np.ndarray, x: int) -> np.ndarray:
    keep = alive[eu] & alive[ev]
    a, b = eu[keep], ev[keep]
    mat = csr_matrix((np.ones(2 * len(a)), (np.concatenate([a, b]), np.concatenate([b, a]))), shape=(g.n, g.n))
    _, labels = _cc(mat, directed=False)
    return np.flatnonzero((labels == labels[x]) & alive)


def _attachments(eu, ev, in_comp: np.ndarray, owner: np.ndarray) -> list[tuple[int, int]]:
    """``(cluster id, smallest component vertex adjacent to it)`` sorted by cluster id."""
    best: dict[int, int] = {}
    for a, b in ((eu, ev), (ev, eu)):
        sel = in_comp[a] & (owner[b] >= 0)
        for u, c in zip(a[sel].tolist(), owner[b[sel]].tolist()):
            if c not in best or u < best[c]:
                best[c] = u
    return sorted(best.items())


def core_partition(g: Graph, delta: float, r: int, rng: Rng, radii: Iterator[float] | None = None):
    """Run Core-Partition; returns ``(CorePartition, unit radii drawn)``.

    ``radii`` replays a recorded sequence instead of sampling from ``rng``.
    """
    if not delta > 0:
        raise ValueError("delta must be positive")
    if r < 2:
        raise ValueError("r must be at least 2")
    law = TexpParams(2.0 * r)
    n = g.n
    eu, ev, _ = g.edge_arrays()
    alive = np.ones(n, dtype=bool)
    owner = np.full(n, -1, dtype=np.int64)
    sk_dist = [0.0] * n
    clusters: list[CoreCluster] = []
    drawn: list[float] = []
    nxt = 0
    while nxt < n:
        if not alive[nxt]:
            nxt += 1
            continue
        x = nxt
        comp = _residual_component(g, eu, ev, alive, x)
        in_comp = np.zeros(n, dtype=bool)
        in_comp[comp] = True
        attach = _attachments(eu, ev, in_comp, owner)
        mask = bytearray(in_comp.astype(np.uint8).tobytes())
        targets = {u for _, u in attach}
        tree = shortest_paths(g, [(x, 0.0)], restrict=mask, targets=targets or None)
        paths: list[list[int]] = []
        for _, u in attach:
            p = tree.path_to(u)
            if p not in paths:
                paths.append(p)
        if not paths:
            paths = [[x]]
        sk = Skeleton(x, paths, [c for c, _ in attach])
        R = float(next(radii)) if radii is not None else texp_sample(law, rng)
        drawn.append(R)
        reach = R * delta
        buf = shortest_paths(g, [(v, 0.0) for v in sk.vertices()], restrict=mask, limit=reach)
        members = sorted(buf.order)
        cid = len(clusters)
        for v in members:
            sk_dist[v] = buf.dist[v]
        alive[members] = False
        owner[members] = cid
        clusters.append(CoreCluster(members, sk, R))
    return CorePartition(n, float(delta), int(r), clusters, sk_dist), drawn


def skeleton_paths(cp: CorePartition, i: int) -> list[list[int]]:
    """Root-to-attachment paths of cluster ``i`` (``[[root]]`` if it has none)."""
    if not 0 <= i < len(cp.clusters):
        raise IndexError(f"cluster index {i} out of range")
    return [list(p) for p in cp.clusters[i].skeleton.paths]
