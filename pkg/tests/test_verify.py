import json

import numpy as np
import pytest

from strongpad.clustering import Cluster, Partition
from strongpad.generators import FamilySpec, generate
from strongpad.graph import Graph
from strongpad.rng import Rng
from strongpad.schemes import SchemeConfig
from strongpad.verify import check_partition, estimate_padding, estimate_separating, wilson


def path(n, w=1.0):
    return Graph(n, [(i, i + 1, w) for i in range(n - 1)])


def part(n, groups, delta=1.0):
    return Partition(n, delta, "test", [Cluster(g[0], list(g), 0.0) for g in groups])


def test_check_partition_trivial_and_failures():
    g = path(5)
    assert check_partition(g, part(5, [[0, 1, 2, 3, 4]]), 4.0).ok
    chk = check_partition(g, part(5, [[0, 1, 2, 3]]), 4.0)
    assert not chk.ok and chk.missing == [4]
    chk = check_partition(g, part(5, [[0, 1, 2], [2, 3, 4]]), 4.0)
    assert chk.duplicated == [2]
    chk = check_partition(g, part(5, [[0, 2], [1], [3, 4]]), 4.0)
    assert chk.disconnected == [0]
    chk = check_partition(g, part(5, [[0, 1, 2, 3, 4]]), 3.5)
    assert chk.too_wide == [0] and chk.diameters == [4.0]
    assert "FAIL" in chk.summary()


@pytest.fixture(scope="module")
def small_rgg():
    return generate(FamilySpec("random-geometric", n=300, radius=0.12, seed=3))


def test_gamma_zero_is_always_padded(small_rgg):
    rep = estimate_padding(small_rgg, SchemeConfig("doubling", 0.3), [0.0], 100, Rng(1))
    assert rep.frequency == [1.0] and rep.worst == [1.0] and rep.ok


def test_padding_reproducible_and_thread_independent(small_rgg):
    cfg = SchemeConfig("doubling", 0.3)
    a = estimate_padding(small_rgg, cfg, [1 / 32, 1 / 16], 100, Rng(7))
    b = estimate_padding(small_rgg, cfg, [1 / 32, 1 / 16], 100, Rng(7))
    c = estimate_padding(small_rgg, cfg, [1 / 32, 1 / 16], 100, Rng(7), threads=2)
    assert a == b == c
    assert json.loads(json.dumps(a.to_json()))["frequency"] == a.frequency
    for f, (lo, hi) in zip(a.frequency, a.interval):
        assert 0 <= lo <= f <= hi <= 1
    assert a.frequency[0] >= a.frequency[1]
    assert "gamma" in a.table()


def test_padding_argument_checks(small_rgg):
    cfg = SchemeConfig("doubling", 0.3)
    with pytest.raises(ValueError):
        estimate_padding(small_rgg, cfg, [1 / 8], 100, Rng(0))
    with pytest.raises(ValueError):
        estimate_padding(small_rgg, cfg, [1 / 32], 50, Rng(0))
    with pytest.raises(ValueError):
        estimate_padding(small_rgg, SchemeConfig("minor-free", 1.0, r=5), [1 / 32], 100, Rng(0))
    rep = estimate_padding(small_rgg, SchemeConfig("minor-free", 1.0, r=5), [1 / 32], 100, Rng(0), max_gamma=1 / 32)
    assert rep.fitted_c is not None and rep.beta is None


def test_vertex_sample(small_rgg):
    rep = estimate_padding(small_rgg, SchemeConfig("cones", 0.3), [1 / 32], 100, Rng(0), sample=[5, 1, 5, 9])
    assert rep.vertices == 3 and rep.worst_vertex[0] in (1, 5, 9)


def test_separating_zero_length_edge_never_cut():
    # two copies of a unit path glued by zero-length edges
    edges = [(i, i + 1, 1.0) for i in range(9)] + [(i, i + 10, 0.0) for i in range(10)]
    edges += [(i + 10, i + 11, 1.0) for i in range(9)]
    g = Graph(20, edges)
    rep = estimate_separating(g, SchemeConfig("doubling", 2.0), 200, Rng(3))
    zero = [k for k, (_, _, w) in enumerate(rep.edges) if w == 0.0]
    assert len(zero) == 10
    assert all(rep.frequency[k] == 0.0 for k in zero)
    assert rep.ok


def test_separating_long_edges_have_bound_one():
    g = path(12, 3.0)
    rep = estimate_separating(g, SchemeConfig("doubling", 4.0), 100, Rng(0))
    assert np.all(np.array(rep.bound) == 1.0)
    assert rep.ok and rep.margin <= 0


def test_wilson_contains_estimate():
    lo, hi = wilson(95, 100)
    assert lo < 0.95 < hi
    assert wilson(100, 100)[1] == pytest.approx(1.0)
