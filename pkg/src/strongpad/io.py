"""Reading and writing graphs, partitions, covers and traces.

Floats are written with ``repr`` (shortest round-tripping decimal), or as C99
hexfloats when ``hexfloat=True``; both read back bit-exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

from .clustering import Cluster, Partition, Trace
from .cover import Cover, CoverCluster
from .graph import Graph


class ParseError(ValueError):
    """Malformed input; the message carries the line or field that failed."""


def _fmt(x: float, hexfloat: bool) -> str:
    return float(x).hex() if hexfloat else repr(float(x))


def _num(tok, where: str) -> float:
    try:
        if isinstance(tok, str):
            t = tok.strip()
            return float.fromhex(t) if "0x" in t.lower() else float(t)
        if isinstance(tok, bool):
            raise TypeError
        return float(tok)
    except (TypeError, ValueError):
        raise ParseError(f"{where}: bad number {tok!r}") from None


def _int(tok, where: str) -> int:
    if isinstance(tok, bool):
        raise ParseError(f"{where}: bad integer {tok!r}")
    try:
        v = int(tok)
    except (TypeError, ValueError):
        raise ParseError(f"{where}: bad integer {tok!r}") from None
    if isinstance(tok, float) and tok != v:
        raise ParseError(f"{where}: bad integer {tok!r}")
    return v


# ---- graphs --------------------------------------------------------------


def graph_to_edgelist(g: Graph, hexfloat: bool = False) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v} {_fmt(w, hexfloat)}" for u, v, w in g.edges()]
    return "\n".join(lines) + "\n"


def graph_from_edgelist(text: str) -> Graph:
    rows = [(i, ln.split()) for i, ln in enumerate(text.splitlines(), start=1)]
    rows = [(i, t) for i, t in rows if t and not t[0].startswith("#")]
    if not rows:
        raise ParseError("line 1: missing header 'n m'")
    i, head = rows[0]
    if len(head) != 2:
        raise ParseError(f"line {i}: header must be 'n m', got {' '.join(head)!r}")
    n, m = _int(head[0], f"line {i} field 1"), _int(head[1], f"line {i} field 2")
    body = rows[1:]
    if len(body) != m:
        raise ParseError(f"header announces {m} edges but {len(body)} edge lines follow")
    edges = []
    for i, t in body:
        if len(t) != 3:
            raise ParseError(f"line {i}: expected 'u v w', got {len(t)} fields")
        edges.append((_int(t[0], f"line {i} field 1"), _int(t[1], f"line {i} field 2"), _num(t[2], f"line {i} field 3")))
    try:
        return Graph(n, edges)
    except ValueError as e:
        raise ParseError(str(e)) from None


def graph_to_json(g: Graph, hexfloat: bool = False, meta: dict | None = None) -> dict:
    out = {"type": "graph", "n": g.n, "edges": [[u, v, _fmt(w, True) if hexfloat else w] for u, v, w in g.edges()]}
    if meta:
        out["meta"] = meta
    return out


def graph_from_json(data: dict) -> Graph:
    if "n" not in data or "edges" not in data:
        raise ParseError("graph JSON needs fields 'n' and 'edges'")
    edges = []
    for k, e in enumerate(data["edges"]):
        if not isinstance(e, (list, tuple)) or len(e) != 3:
            raise ParseError(f"edges[{k}]: expected [u, v, w]")
        edges.append((_int(e[0], f"edges[{k}][0]"), _int(e[1], f"edges[{k}][1]"), _num(e[2], f"edges[{k}][2]")))
    try:
        return Graph(_int(data["n"], "n"), edges)
    except ValueError as e:
        raise ParseError(str(e)) from None


def _load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None


def _dump(path, data: dict):
    Path(path).write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")


def read_graph(path) -> Graph:
    """Edge-list text unless the file is JSON (detected by suffix or leading ``{``)."""
    text = Path(path).read_text()
    if str(path).endswith(".json") or text.lstrip().startswith("{"):
        return graph_from_json(_load_json(path))
    return graph_from_edgelist(text)


def write_graph(g: Graph, path, fmt: str | None = None, hexfloat: bool = False, meta: dict | None = None):
    fmt = fmt or ("json" if str(path).endswith(".json") else "edgelist")
    if fmt == "json":
        _dump(path, graph_to_json(g, hexfloat, meta))
    elif fmt == "edgelist":
        Path(path).write_text(graph_to_edgelist(g, hexfloat))
    elif fmt == "dot":
        Path(path).write_text(to_dot(g))
    else:
        raise ValueError(f"unsupported graph format {fmt!r}")


# ---- partitions ------------------------------------------------------------


def partition_to_json(p: Partition, meta: dict | None = None) -> dict:
    out = {
        "type": "partition",
        "n": p.n,
        "delta": p.delta,
        "engine": p.engine,
        "clusters": [
            {"center": c.center, "radius": c.radius, "members": list(c.members), **({"core": c.core} if c.core is not None else {})}
            for c in p.clusters
        ],
    }
    if meta:
        out["meta"] = meta
    return out


def partition_from_json(data: dict) -> Partition:
    try:
        n, delta, engine = _int(data["n"], "n"), _num(data["delta"], "delta"), str(data["engine"])
        raw = data["clusters"]
    except KeyError as e:
        raise ParseError(f"partition JSON missing field {e.args[0]!r}") from None
    seen = [-1] * n
    clusters = []
    for k, c in enumerate(raw):
        mem = [_int(v, f"clusters[{k}].members") for v in c.get("members", [])]
        if not mem:
            raise ParseError(f"clusters[{k}]: empty cluster")
        for v in mem:
            if not 0 <= v < n:
                raise ParseError(f"clusters[{k}]: vertex {v} outside 0..{n - 1}")
            if seen[v] >= 0:
                raise ParseError(f"clusters[{k}]: vertex {v} already in cluster {seen[v]} (clusters overlap)")
            seen[v] = k
        core = c.get("core")
        clusters.append(Cluster(_int(c["center"], f"clusters[{k}].center"), mem,
                                _num(c.get("radius", 0.0), f"clusters[{k}].radius"),
                                None if core is None else _int(core, f"clusters[{k}].core")))
    missing = [v for v in range(n) if seen[v] < 0]
    if missing:
        raise ParseError(f"partition does not cover vertices {missing[:10]}")
    return Partition(n, delta, engine, clusters)


def write_partition(p: Partition, path, meta: dict | None = None):
    _dump(path, partition_to_json(p, meta))


def read_partition(path) -> Partition:
    return partition_from_json(_load_json(path))


# ---- traces ----------------------------------------------------------------


def trace_to_json(t: Trace, meta: dict | None = None) -> dict:
    out = {
        "type": "trace",
        "seed": t.seed,
        "labels": [x if isinstance(x, int) else str(x) for x in t.labels],
        "engine": t.engine,
        "delta": _fmt(t.delta, True),
        "lam": None if t.lam is None else _fmt(t.lam, True),
        "centers": list(t.centers),
        "draws": [_fmt(d, True) for d in t.draws],
        "parts": [trace_to_json(s) for s in t.parts],
        "extra": t.extra,
    }
    if meta:
        out["meta"] = meta
    return out


def trace_from_json(data: dict) -> Trace:
    try:
        return Trace(
            _int(data["seed"], "seed"),
            list(data.get("labels", [])),
            str(data["engine"]),
            _num(data["delta"], "delta"),
            None if data.get("lam") is None else _num(data["lam"], "lam"),
            [_int(c, "centers") for c in data.get("centers", [])],
            [_num(d, f"draws[{k}]") for k, d in enumerate(data.get("draws", []))],
            [trace_from_json(s) for s in data.get("parts", [])],
            dict(data.get("extra", {})),
        )
    except KeyError as e:
        raise ParseError(f"trace JSON missing field {e.args[0]!r}") from None


def write_trace(t: Trace, path, meta: dict | None = None):
    _dump(path, trace_to_json(t, meta))


def read_trace(path) -> Trace:
    return trace_from_json(_load_json(path))


# ---- covers ----------------------------------------------------------------


def cover_to_json(c: Cover, meta: dict | None = None) -> dict:
    out = {
        "type": "cover",
        "n": c.n,
        "delta": c.delta,
        "padding_radius": c.padding_radius,
        "m": c.m,
        "clusters": [{"partition": cl.partition, "center": cl.center, "members": list(cl.members)} for cl in c.clusters],
        "membership": c.membership,
    }
    if c.trace is not None:
        out["trace"] = trace_to_json(c.trace)
    if meta:
        out["meta"] = meta
    return out


def cover_from_json(data: dict) -> Cover:
    try:
        n = _int(data["n"], "n")
        clusters = [
            CoverCluster([_int(v, f"clusters[{k}].members") for v in cl["members"]],
                         _int(cl["partition"], f"clusters[{k}].partition"), _int(cl["center"], f"clusters[{k}].center"))
            for k, cl in enumerate(data["clusters"])
        ]
        cov = Cover(n, _num(data["delta"], "delta"), _num(data["padding_radius"], "padding_radius"),
                    _int(data["m"], "m"), clusters, trace_from_json(data["trace"]) if "trace" in data else None)
    except KeyError as e:
        raise ParseError(f"cover JSON missing field {e.args[0]!r}") from None
    for k, cl in enumerate(clusters):
        if any(not 0 <= v < n for v in cl.members):
            raise ParseError(f"clusters[{k}]: vertex outside 0..{n - 1}")
    return cov


def write_cover(c: Cover, path, meta: dict | None = None):
    _dump(path, cover_to_json(c, meta))


def read_cover(path) -> Cover:
    return cover_from_json(_load_json(path))


# ---- DOT -------------------------------------------------------------------

_PALETTE = ["#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#ffff33", "#a65628", "#f781bf", "#999999",
            "#66c2a5", "#fc8d62", "#8da0cb"]


def to_dot(g: Graph, p: Partition | None = None) -> str:
    """Graphviz source; with a partition, vertices are coloured by cluster."""
    lines = ["graph G {", "  node [style=filled, shape=circle, width=0.2, label=\"\"];"]
    assign = p.assignment if p is not None else None
    for v in range(g.n):
        if assign is None:
            lines.append(f"  {v};")
        else:
            lines.append(f'  {v} [fillcolor="{_PALETTE[int(assign[v]) % len(_PALETTE)]}"];')
    for u, v, w in g.edges():
        lines.append(f'  {u} -- {v} [len={w!r}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
