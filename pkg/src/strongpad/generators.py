"""Test-family graphs: paths, cycles, random trees, grids and random geometric graphs."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy.spatial import cKDTree

from .graph import Graph, connected_components
from .nets import greedy_net
from .rng import Rng

FAMILIES = ("path", "cycle", "tree", "grid", "random-geometric")


@dataclass
class FamilySpec:
    family: str
    n: int = 0
    rows: int = 0
    cols: int = 0
    dim: int = 2
    radius: float = 0.0
    weights: str = "unit"  # "unit" or "uniform"
    low: float = 1.0
    high: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose one of {', '.join(FAMILIES)}")
        if self.family == "grid":
            if self.rows < 1 or self.cols < 1:
                raise ValueError("grid needs rows >= 1 and cols >= 1")
        elif self.n < 1:
            raise ValueError(f"{self.family} needs n >= 1")
        if self.family == "cycle" and self.n < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        if self.family == "random-geometric":
            if self.dim < 1:
                raise ValueError("dim must be at least 1")
            if not self.radius > 0:
                raise ValueError("random-geometric needs a positive radius")
        if self.weights not in ("unit", "uniform"):
            raise ValueError("weights must be 'unit' or 'uniform'")
        if self.weights == "uniform" and not (0 < self.low <= self.high):
            raise ValueError("uniform weights need 0 < low <= high")

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "FamilySpec":
        return cls(**data)


def _weigh(spec: FamilySpec, pairs: list[tuple[int, int]], rng: Rng) -> list[tuple[int, int, float]]:
    if spec.weights == "unit":
        return [(u, v, 1.0) for u, v in pairs]
    w = spec.low + (spec.high - spec.low) * rng.fork("weights").uniform(len(pairs))
    return [(u, v, float(x)) for (u, v), x in zip(pairs, w)]


def _geometric(spec: FamilySpec, rng: Rng) -> Graph:
    pts = rng.fork("points").uniform((spec.n, spec.dim))
    tree = cKDTree(pts)
    pairs = tree.query_pairs(spec.radius, output_type="ndarray")
    pairs = pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))] if len(pairs) else pairs
    full = Graph(spec.n, [(int(a), int(b), float(np.linalg.norm(pts[a] - pts[b]))) for a, b in pairs])
    comps = connected_components(full)
    largest = max(comps, key=len)
    return full.subgraph(largest)[0]


def generate(spec: FamilySpec, rng: Rng | None = None) -> Graph:
    """Build the graph described by ``spec`` (``rng`` defaults to ``Rng(spec.seed)``).

    Random-geometric graphs use Euclidean edge lengths (``weights`` is ignored)
    and keep only the largest connected component, relabelled in index order.
    """
    rng = rng if rng is not None else Rng(spec.seed)
    f = spec.family
    if f == "random-geometric":
        return _geometric(spec, rng)
    if f == "path":
        pairs = [(i, i + 1) for i in range(spec.n - 1)]
        n = spec.n
    elif f == "cycle":
        pairs = [(i, i + 1) for i in range(spec.n - 1)] + [(0, spec.n - 1)]
        n = spec.n
    elif f == "tree":
        n = spec.n
        tr = rng.fork("tree")
        parent = [int(tr.integers(0, i)) for i in range(1, n)]
        pairs = [(p, i) for i, p in enumerate(parent, start=1)]
    else:
        n = spec.rows * spec.cols
        pairs = []
        for i in range(spec.rows):
            for j in range(spec.cols):
                v = i * spec.cols + j
                if j + 1 < spec.cols:
                    pairs.append((v, v + 1))
                if i + 1 < spec.rows:
                    pairs.append((v, v + spec.cols))
    return Graph(n, _weigh(spec, pairs, rng))


def calibrate_delta(g: Graph, lo: int = 30, hi: int = 100, iters: int = 60) -> float:
    """Bisect for a scale whose greedy net has between ``lo`` and ``hi`` points."""
    if g.n < lo:
        raise ValueError(f"graph has only {g.n} vertices, cannot reach {lo} net points")
    a, b = 0.0, float(sum(w for _, _, w in g.edges())) or 1.0
    for _ in range(iters):
        mid = (a + b) / 2
        k = len(greedy_net(g, mid).centers)
        if lo <= k <= hi:
            return mid
        if k > hi:
            a = mid
        else:
            b = mid
    raise ValueError(f"no scale found with {lo}..{hi} net points")
