import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import argmax_assignment, cones_reference, floyd, random_connected
from strongpad.clustering import (
    CONES,
    STARTING_TIMES,
    carve_cones,
    cluster_starting_times,
    cone_partition,
    padded_decompose,
    padding_floor,
    padding_witness,
)
from strongpad.generators import FamilySpec, generate
from strongpad.graph import Graph, PreconditionError, shortest_paths, strong_diameter
from strongpad.nets import CenterSet, greedy_net, measure
from strongpad.rng import Rng


def unit_path(n):
    return Graph(n, [(i, i + 1, 1.0) for i in range(n - 1)])


# ---- hand-checked examples ------------------------------------------------


def test_three_path_example():
    g = unit_path(3)
    cs = CenterSet([0, 2], 1.0)
    p = cluster_starting_times(g, cs, [0.6, 0.5])
    assert p.assignment.tolist() == [0, 0, 1]
    w = padding_witness(g, cs, [0.6, 0.5], 1)
    assert (w.x1, w.x2) == (0, 2)
    assert w.upsilon == pytest.approx(0.1)


def test_equal_times_tie_goes_to_lower_index():
    g = unit_path(3)
    p = cluster_starting_times(g, CenterSet([2, 0], 1.0), [0.5, 0.5])
    assert p.cluster_of(1).center == 2
    assert padding_witness(g, CenterSet([2, 0], 1.0), [0.5, 0.5], 1).upsilon == 0.0


def test_single_center_gives_one_cluster_and_infinite_gap():
    g = unit_path(4)
    cs = CenterSet([1], 2.0)
    p = cluster_starting_times(g, cs, [0.3])
    assert [c.members for c in p.clusters] == [[0, 1, 2, 3]]
    assert padding_witness(g, cs, [0.3], 3).upsilon == math.inf
    q = carve_cones(g, cs, [0.0])
    assert [c.members for c in q.clusters] == [[0, 1, 2, 3]]


def test_five_path_cones_example():
    g = unit_path(5)
    p = carve_cones(g, CenterSet([0, 4], 2.0), [0.5, 0.1])
    assert [c.members for c in p.clusters] == [[0, 1, 2], [3, 4]]
    assert p.engine == CONES


def test_first_cone_contains_ball():
    g = generate(FamilySpec("grid", rows=6, cols=6))
    cs = greedy_net(g, 3.0)
    p = carve_cones(g, cs, [1.5] + [0.0] * (len(cs) - 1))
    b = shortest_paths(g, [cs.centers[0]], limit=1.5).order
    assert set(b) <= set(p.clusters[0].members)


def test_covering_violation_fails_fast():
    g = unit_path(6)
    cs = CenterSet([0], 2.0)
    with pytest.raises(PreconditionError):
        cluster_starting_times(g, cs, [1.0])
    with pytest.raises(PreconditionError):
        carve_cones(g, CenterSet([0], 2.0), [1.0])
    with pytest.raises(PreconditionError):
        padded_decompose(g, CenterSet([0], 2.0), None, Rng(0))


def test_times_validated():
    g = unit_path(3)
    with pytest.raises(ValueError):
        cluster_starting_times(g, CenterSet([0, 2], 1.0), [0.5])
    with pytest.raises(ValueError):
        cluster_starting_times(g, CenterSet([0, 2], 1.0), [0.5, 1.5])
    with pytest.raises(ValueError):
        cluster_starting_times(g, CenterSet([], 1.0), [])


def test_frozen_grid_assignment():
    g = generate(FamilySpec("grid", rows=8, cols=8))
    cs = measure(g, greedy_net(g, 2.0))
    p, tr = padded_decompose(g, cs, None, Rng(11))
    assert p.assignment.tolist()[:16] == [0, 0, 1, 1, 1, 2, 2, 2, 0, 3, 1, 1, 4, 2, 2, 5]
    assert tr.engine == STARTING_TIMES and len(tr.draws) == len(cs.centers)
    assert p.meta["lam"] == pytest.approx(2 + 2 * math.log(11))


# ---- oracle equivalence ----------------------------------------------------

instances = st.tuples(st.integers(1, 40), st.integers(0, 40), st.integers(0, 10**6), st.integers(2, 24))


def _setup(n, extra, seed, q, data):
    g = random_connected(n, extra, seed)
    delta = q / 4
    cs = greedy_net(g, delta)
    # optionally add a few extra centers in arbitrary order
    extra_c = data.draw(st.lists(st.integers(0, n - 1), max_size=4, unique=True))
    centers = list(dict.fromkeys(data.draw(st.permutations(cs.centers)) + extra_c))
    return g, CenterSet(centers, delta)


@settings(max_examples=80, deadline=None)
@given(instances, st.data())
def test_starting_times_equal_brute_force_argmax(inst, data):
    g, cs = _setup(*inst, data)
    times = data.draw(st.lists(st.integers(0, 16).map(lambda k: k * cs.delta / 16),
                               min_size=len(cs), max_size=len(cs)))
    p = cluster_starting_times(g, cs, times)
    d = floyd(g)
    ref = argmax_assignment(d, cs.centers, times, range(g.n))
    assert all(cs.centers[ref[v]] == p.cluster_of(v).center for v in range(g.n))
    for c in p.clusters:
        assert strong_diameter(g, c.members) <= 4 * cs.delta


@settings(max_examples=60, deadline=None)
@given(instances, st.data())
def test_cones_equal_reference_and_stay_bounded(inst, data):
    g, cs = _setup(*inst, data)
    radii = data.draw(st.lists(st.integers(0, 8).map(lambda k: k * cs.delta / 8),
                               min_size=len(cs), max_size=len(cs)))
    p = carve_cones(g, cs, radii)
    assert [c.members for c in p.clusters] == cones_reference(g, cs.centers, radii)
    for c in p.clusters:
        assert strong_diameter(g, c.members) <= 4 * cs.delta


@settings(max_examples=100, deadline=None)
@given(instances, st.data())
def test_witness_ball_stays_in_cluster(inst, data):
    g, cs = _setup(*inst, data)
    times = data.draw(st.lists(st.floats(0, 1).map(lambda x: x * cs.delta), min_size=len(cs), max_size=len(cs)))
    v = data.draw(st.integers(0, g.n - 1))
    p = cluster_starting_times(g, cs, times)
    w = padding_witness(g, cs, times, v)
    assert w.upsilon >= 0
    assert [k for k, _ in w.keys] == sorted((k for k, _ in w.keys), reverse=True)
    assert w.x1 == p.cluster_of(v).center
    d = floyd(g)
    home = p.assignment[v]
    assert all(p.assignment[u] == home for u in range(g.n) if d[v][u] < w.upsilon / 2)


@settings(max_examples=40, deadline=None)
@given(instances, st.data())
def test_cone_vertices_clustered_no_later_than_their_path(inst, data):
    """Once any vertex on a fixed shortest v-x_v path is clustered, so is v."""
    g, cs = _setup(*inst, data)
    radii = data.draw(st.lists(st.integers(0, 8).map(lambda k: k * cs.delta / 8),
                               min_size=len(cs), max_size=len(cs)))
    p = carve_cones(g, cs, radii)
    nearest = shortest_paths(g, cs.centers)
    a = p.assignment
    for v in range(g.n):
        path = nearest.path_to(v)
        assert a[v] <= min(a[u] for u in path)


# ---- floors ----------------------------------------------------------------


def test_padding_floor_forms():
    assert padding_floor(0.0, 8.0, 20) == 1.0
    assert padding_floor(1 / 16, 8.0, 20) == pytest.approx(math.exp(-2.0))
    assert padding_floor(1 / 32, 8.0, 20, CONES) == pytest.approx(math.exp(-2.0))
    user = padding_floor(1 / 16, 8.0, 20, default=False)
    assert user == pytest.approx(1 - (1 - math.exp(-1.0)) * (1 + 20 / math.expm1(8.0)))
    assert padding_floor(0.5, 0.1, 100, default=False) == 0.0


def test_cone_partition_draws_one_radius_per_center():
    g = generate(FamilySpec("random-geometric", n=300, radius=0.12, seed=2))
    cs = measure(g, greedy_net(g, 0.25))
    p, tr = cone_partition(g, cs, None, Rng(4))
    assert len(tr.draws) == len(cs)
    assert np.all((np.array(tr.draws) >= 0) & (np.array(tr.draws) <= 1))
    assert carve_cones(g, CenterSet(cs.centers, cs.delta), [x * cs.delta for x in tr.draws]) == p
