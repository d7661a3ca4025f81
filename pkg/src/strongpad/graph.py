"""Immutable weighted undirected graphs and the shortest-path primitives
everything else is built on.

Distances are float64.  Every search accumulates path weights from the
source outwards (``dist[v] = dist[pred[v]] + w``) so a replay with the same
inputs gives bit-identical distances.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _cc
from scipy.sparse.csgraph import dijkstra as _sp_dijkstra

INF = math.inf


class PreconditionError(ValueError):
    """An algorithm's input assumption (e.g. covering) does not hold."""


class Graph:
    """Undirected graph on vertices ``0..n-1`` with non-negative edge lengths.

    Built once from an edge list and never mutated afterwards.
    """

    __slots__ = ("n", "adj", "_edges", "_wmap", "_csr")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, float]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = int(n)
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        wmap: dict[tuple[int, int], float] = {}
        for u, v, w in edges:
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) outside vertex range 0..{self.n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (w >= 0.0) or math.isinf(w):
                raise ValueError(f"edge ({u}, {v}) has invalid weight {w!r}")
            key = (u, v) if u < v else (v, u)
            if key in wmap:
                raise ValueError(f"duplicate edge {key}")
            wmap[key] = w
            adj[u].append((v, w))
            adj[v].append((u, w))
        for nbrs in adj:
            nbrs.sort()
        self.adj = tuple(tuple(a) for a in adj)
        self._wmap = wmap
        self._edges = tuple(sorted((u, v, w) for (u, v), w in wmap.items()))
        self._csr = None

    @property
    def m(self) -> int:
        return len(self._edges)

    def edges(self) -> tuple[tuple[int, int, float], ...]:
        """Edges as ``(u, v, w)`` with ``u < v``, sorted."""
        return self._edges

    def weight(self, u: int, v: int) -> float | None:
        return self._wmap.get((u, v) if u < v else (v, u))

    def has_edge(self, u: int, v: int) -> bool:
        return self.weight(u, v) is not None

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if not self._edges:
            return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64), np.zeros(0)
        e = np.array([(u, v) for u, v, _ in self._edges], dtype=np.int64)
        w = np.array([w for _, _, w in self._edges], dtype=float)
        return e[:, 0], e[:, 1], w

    def csr(self) -> csr_matrix:
        """Symmetric scipy CSR matrix (explicit zeros are kept as edges)."""
        if self._csr is None:
            u, v, w = self.edge_arrays()
            self._csr = csr_matrix(
                (np.concatenate([w, w]), (np.concatenate([u, v]), np.concatenate([v, u]))),
                shape=(self.n, self.n),
            )
        return self._csr

    def subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabelled in increasing original-index order.

        Returns the subgraph and the list mapping new index -> original vertex.
        """
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        sub_edges = []
        for v in keep:
            for u, w in self.adj[v]:
                if v < u and u in index:
                    sub_edges.append((index[v], index[u], w))
        return Graph(len(keep), sub_edges), keep

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self):
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass
class DistanceField:
    """Result of a (multi-source) search.

    ``dist[v]`` is ``min_s offset_s + d(s, v)``; ``raw[v]`` is the plain path
    length from the owning source; ``owner[v]`` is the owning source vertex
    (``-1`` when unreachable) and ``origin[v]`` its position in the source list.
    ``order`` lists the settled vertices in the order they were settled.
    """

    dist: list[float]
    raw: list[float]
    owner: list[int]
    origin: list[int]
    pred: list[int]
    order: list[int] = field(default_factory=list)

    def path_to(self, v: int) -> list[int]:
        """Vertices from the owning source to ``v`` along predecessor edges."""
        if self.owner[v] < 0:
            raise ValueError(f"vertex {v} is unreachable")
        path = [v]
        while self.pred[path[-1]] >= 0:
            path.append(self.pred[path[-1]])
        path.reverse()
        return path


def _as_mask(g: Graph, restrict) -> bytearray | None:
    if restrict is None:
        return None
    if isinstance(restrict, (bytes, bytearray)):
        if len(restrict) != g.n:
            raise ValueError("mask length must equal the vertex count")
        return restrict
    mask = bytearray(g.n)
    for v in restrict:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} outside range")
        mask[v] = 1
    return mask


def shortest_paths(
    g: Graph,
    sources: Sequence[tuple[int, float]] | Sequence[int],
    restrict: Iterable[int] | None = None,
    limit: float = INF,
    targets: Iterable[int] | None = None,
) -> DistanceField:
    """Multi-source Dijkstra with per-source key offsets.

    ``sources`` holds ``(vertex, offset)`` pairs (bare vertices mean offset 0).
    Ties on the key go to the source that appears first in ``sources``.
    Only vertices of ``restrict`` (a vertex iterable or a 0/1 bytearray mask of
    length ``n``) are visited when it is given.  ``limit`` stops
    the search once keys exceed it; ``targets`` stops it once all are settled.
    Vertices not settled keep ``inf``.
    """
    srcs = [(s, 0.0) if isinstance(s, (int, np.integer)) else (int(s[0]), float(s[1])) for s in sources]
    if not srcs:
        raise ValueError("sources must be non-empty")
    mask = _as_mask(g, restrict)
    n = g.n
    dist = [INF] * n
    raw = [INF] * n
    origin = [-1] * n
    pred = [-1] * n
    seen = set()
    heap = []
    for pos, (s, off) in enumerate(srcs):
        if not 0 <= s < n:
            raise ValueError(f"source {s} outside range")
        if not math.isfinite(off):
            raise ValueError(f"offset of source {s} is not finite")
        if mask is not None and not mask[s]:
            raise ValueError(f"source {s} lies outside the restricted vertex set")
        if s in seen:
            raise ValueError(f"duplicate source {s}")
        seen.add(s)
        dist[s], raw[s], origin[s] = off, 0.0, pos
        heap.append((off, pos, s))
    heapq.heapify(heap)
    offs = [off for _, off in srcs]
    pending = None if targets is None else set(targets)
    done = bytearray(n)
    touched = [s for s, _ in srcs]
    order = []
    adj = g.adj
    while heap:
        key, pos, v = heapq.heappop(heap)
        if done[v] or key != dist[v] or pos != origin[v]:
            continue
        if key > limit:
            break
        done[v] = 1
        order.append(v)
        if pending is not None:
            pending.discard(v)
            if not pending:
                break
        rv = raw[v]
        off = offs[pos]
        for u, w in adj[v]:
            if done[u] or (mask is not None and not mask[u]):
                continue
            nr = rv + w
            nk = off + nr
            du = dist[u]
            if nk < du or (nk == du and pos < origin[u]):
                if du == INF:
                    touched.append(u)
                dist[u], raw[u], origin[u], pred[u] = nk, nr, pos, v
                heapq.heappush(heap, (nk, pos, u))
    for v in touched:
        if not done[v]:
            dist[v] = raw[v] = INF
            origin[v] = pred[v] = -1
    owner = [srcs[p][0] if p >= 0 else -1 for p in origin]
    return DistanceField(dist, raw, owner, origin, pred, order)


def ball(g: Graph, v: int, r: float, restrict: Iterable[int] | None = None) -> set[int]:
    """``{u : d(v, u) <= r}`` in ``g`` (or in ``g[restrict]``)."""
    if r < 0:
        raise ValueError("radius must be non-negative")
    return set(shortest_paths(g, [(v, 0.0)], restrict=restrict, limit=r).order)


def _check_nonempty(c) -> list[int]:
    c = sorted(set(int(v) for v in c))
    if not c:
        raise ValueError("vertex set must be non-empty")
    return c


def weak_diameter(g: Graph, c: Iterable[int]) -> float:
    """Largest ``d_G(u, v)`` over pairs of ``c`` (distances in the full graph)."""
    c = _check_nonempty(c)
    if len(c) == 1:
        return 0.0
    d = _sp_dijkstra(g.csr(), directed=False, indices=c)
    return float(d[:, c].max())


def strong_diameter(g: Graph, c: Iterable[int]) -> float:
    """Diameter of the induced subgraph ``g[c]``; ``inf`` if it is disconnected."""
    c = _check_nonempty(c)
    if len(c) == 1:
        return 0.0
    sub = g.csr()[c][:, c]
    return float(_sp_dijkstra(sub, directed=False).max())


def connected_components(g: Graph, restrict: Iterable[int] | None = None) -> list[list[int]]:
    """Components of ``g`` (or ``g[restrict]``), ordered by smallest vertex."""
    verts = list(range(g.n)) if restrict is None else sorted(set(restrict))
    if not verts:
        return []
    sub = g.csr()[verts][:, verts]
    _, labels = _cc(sub, directed=False)
    # scipy numbers components by first vertex encountered in index order
    out: list[list[int]] = [[] for _ in range(int(labels.max()) + 1)]
    for i, lab in enumerate(labels):
        out[lab].append(verts[i])
    return out


def distance_matrix(g: Graph) -> np.ndarray:
    """All-pairs distances (scipy Dijkstra); for oracles and small graphs."""
    return _sp_dijkstra(g.csr(), directed=False)
