import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strongpad import io
from strongpad.clustering import cluster_starting_times
from strongpad.cover import sparse_cover
from strongpad.generators import FamilySpec, generate
from strongpad.graph import Graph, connected_components
from strongpad.nets import CenterSet
from strongpad.rng import Rng
from strongpad.schemes import SchemeConfig, decompose, replay

weighted = st.lists(
    st.tuples(st.integers(0, 11), st.integers(0, 11), st.floats(0, 1e6, allow_nan=False, allow_infinity=False)),
    max_size=40,
)


def dedup(edges):
    seen = {}
    for u, v, w in edges:
        if u != v:
            seen.setdefault((min(u, v), max(u, v)), w)
    return Graph(12, [(u, v, w) for (u, v), w in seen.items()])


@settings(max_examples=60, deadline=None)
@given(weighted, st.booleans())
def test_graph_round_trips(edges, hexfloat):
    g = dedup(edges)
    assert io.graph_from_edgelist(io.graph_to_edgelist(g, hexfloat)) == g
    assert io.graph_from_json(json.loads(json.dumps(io.graph_to_json(g, hexfloat)))) == g


def test_file_round_trip_and_format_detection(tmp_path):
    g = generate(FamilySpec("random-geometric", n=200, radius=0.15, seed=8))
    for name, fmt in [("g.json", None), ("g.txt", "edgelist"), ("g2.txt", "json")]:
        io.write_graph(g, tmp_path / name, fmt)
        assert io.read_graph(tmp_path / name) == g


def test_edgelist_errors_name_the_line():
    with pytest.raises(io.ParseError, match="line 3"):
        io.graph_from_edgelist("3 2\n0 1 1.0\n1 2 abc\n")
    with pytest.raises(io.ParseError, match="line 2: expected"):
        io.graph_from_edgelist("3 1\n0 1\n")
    with pytest.raises(io.ParseError, match="announces 2"):
        io.graph_from_edgelist("3 2\n0 1 1.0\n")
    with pytest.raises(io.ParseError, match="header"):
        io.graph_from_edgelist("3\n")
    with pytest.raises(io.ParseError, match="self-loop"):
        io.graph_from_edgelist("3 1\n1 1 1.0\n")
    with pytest.raises(io.ParseError, match=r"edges\[0\]\[2\]"):
        io.graph_from_json({"n": 2, "edges": [[0, 1, "x"]]})


def test_json_syntax_error_has_location(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"n": 2,\n "edges": [}')
    with pytest.raises(io.ParseError, match="line 2"):
        io.read_graph(f)


def test_partition_round_trip_and_rejections(tmp_path):
    g = generate(FamilySpec("grid", rows=10, cols=10))
    p, tr, rep = decompose(g, SchemeConfig("minor-free", 8.0, r=5, seed=2))
    io.write_partition(p, tmp_path / "p.json", meta={"seed": 2})
    assert io.read_partition(tmp_path / "p.json") == p
    data = io.partition_to_json(p)
    data["clusters"][1]["members"].append(data["clusters"][0]["members"][0])
    with pytest.raises(io.ParseError, match="overlap"):
        io.partition_from_json(data)
    data = io.partition_to_json(p)
    max(data["clusters"], key=lambda c: len(c["members"]))["members"].pop()
    with pytest.raises(io.ParseError, match="does not cover"):
        io.partition_from_json(data)


@pytest.mark.parametrize("kind", ["doubling", "cones", "minor-free"])
def test_trace_round_trip_replays(tmp_path, kind):
    g = generate(FamilySpec("grid", rows=12, cols=12, weights="uniform", low=0.3, high=1.7, seed=4))
    p, tr, _ = decompose(g, SchemeConfig(kind, 5.0, r=5 if kind == "minor-free" else None, seed=6))
    io.write_trace(tr, tmp_path / "t.json")
    back = io.read_trace(tmp_path / "t.json")
    assert back == tr
    assert replay(g, back) == p


def test_stored_starting_times_reproduce_partition(tmp_path):
    g = generate(FamilySpec("random-geometric", n=300, radius=0.1, seed=1))
    p, tr, _ = decompose(g, SchemeConfig("doubling", 0.25, seed=3))
    io.write_partition(p, tmp_path / "p.json")
    io.write_trace(tr, tmp_path / "t.json")
    t = io.read_trace(tmp_path / "t.json")
    again = cluster_starting_times(g, CenterSet(t.centers, t.delta), [x * t.delta for x in t.draws])
    assert again == io.read_partition(tmp_path / "p.json")


def test_cover_round_trip(tmp_path):
    g = Graph(30, [(i, i + 1, 1.0) for i in range(29)])
    cov, _ = sparse_cover(g, 64.0, 1, None, None, Rng(0))
    io.write_cover(cov, tmp_path / "c.json")
    back = io.read_cover(tmp_path / "c.json")
    assert back == cov and back.trace == cov.trace
    data = json.loads((tmp_path / "c.json").read_text())
    assert data["membership"][0] == [k for k, c in enumerate(cov.clusters) if 0 in c.members]


def test_dot_export_colours_clusters():
    g = Graph(3, [(0, 1, 1.0), (1, 2, 0.5)])
    p = cluster_starting_times(g, CenterSet([0, 2], 1.0), [0.0, 1.0])
    dot = io.to_dot(g, p)
    assert dot.startswith("graph G {") and "0 -- 1" in dot and "fillcolor" in dot


# ---- generators ------------------------------------------------------------


def test_small_families():
    assert generate(FamilySpec("path", n=3)).edges() == ((0, 1, 1.0), (1, 2, 1.0))
    g = generate(FamilySpec("grid", rows=2, cols=2))
    assert (g.n, g.m) == (4, 4)
    c = generate(FamilySpec("cycle", n=5))
    assert c.m == 5 and all(len(a) == 2 for a in c.adj)


def test_frozen_generators():
    g = generate(FamilySpec("random-geometric", n=1000, dim=2, radius=0.08, seed=7))
    assert (g.n, g.m) == (1000, 9403)
    assert generate(FamilySpec("random-geometric", n=1000, dim=2, radius=0.08, seed=7)) == g
    t = generate(FamilySpec("tree", n=10, seed=3))
    assert [(u, v) for u, v, _ in t.edges()] == [(0, 1), (0, 3), (0, 5), (0, 9), (1, 2), (1, 6), (3, 4), (3, 7), (6, 8)]


@pytest.mark.parametrize("seed", range(5))
def test_structural_certificates(seed):
    t = generate(FamilySpec("tree", n=200, seed=seed, weights="uniform", low=0.5, high=2.0))
    assert t.m == t.n - 1 and len(connected_components(t)) == 1  # connected with n-1 edges: acyclic
    assert all(0.5 <= w <= 2.0 for _, _, w in t.edges())
    rows, cols = 3 + seed, 7
    gr = generate(FamilySpec("grid", rows=rows, cols=cols))
    # lattice edges only: planar by construction
    assert gr.m == 2 * rows * cols - rows - cols
    assert all(v - u in (1, cols) for u, v, _ in gr.edges())
    rg = generate(FamilySpec("random-geometric", n=300, radius=0.09, seed=seed))
    assert len(connected_components(rg)) == 1


@pytest.mark.parametrize("kw", [
    dict(family="star", n=3), dict(family="path", n=0), dict(family="cycle", n=2), dict(family="grid", rows=0, cols=2),
    dict(family="random-geometric", n=10), dict(family="path", n=3, weights="uniform", low=2.0, high=1.0),
    dict(family="path", n=3, weights="uniform", low=0.0, high=1.0),
])
def test_bad_specs(kw):
    with pytest.raises(ValueError):
        FamilySpec(**kw)
