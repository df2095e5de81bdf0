import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ktd.errors import EmptyPartition, HypothesisNotMet
from ktd.geometry import support_values
from ktd.graphs import build_ktd_cones, complete_graph
from ktd.matching import adjacency_masks, component_count
from ktd.partition import (
    PartitionMST,
    check_lemma_triangle3,
    check_mst_triangles_empty,
    max_overlap_depth,
    partition_mst,
    sample_exchange_configurations,
)
from ktd.sampling import make_rng, random_pointset
from oracles import prufer_trees, td_sigma


def random_partition(n, blocks, rng):
    labels = np.concatenate([np.arange(blocks), rng.integers(0, blocks, n - blocks)])
    rng.shuffle(labels)
    return [list(np.flatnonzero(labels == b)) for b in range(blocks)]


def tri(p, q):
    return np.maximum(support_values(p).as_array(), support_values(q).as_array())


def test_prufer_oracle_counts():
    for m in range(1, 7):
        assert sum(1 for _ in prufer_trees(m)) == max(1, m ** (m - 2))


@given(st.integers(0, 10_000), st.integers(1, 7))
def test_mst_weight_matches_exhaustive_tree_search(seed, blocks):
    rng = make_rng(seed)
    ps = random_pointset(int(rng.integers(blocks, 16)), rng)
    part = random_partition(ps.n, blocks, rng)
    # block distances straight from the ternary-search oracle
    dist = np.zeros((blocks, blocks))
    for i, j in itertools.combinations(range(blocks), 2):
        dist[i, j] = dist[j, i] = min(td_sigma(ps[a], ps[b]) for a in part[i] for b in part[j])
    best = min(sum(dist[i, j] for i, j in t) for t in prufer_trees(blocks))
    result = partition_mst(ps, part)
    assert len(result.edges) == blocks - 1
    assert result.weight == pytest.approx(best, rel=1e-6, abs=1e-9)


def test_singleton_partition_is_ordinary_mst(pointset):
    ps = pointset(10, seed=2)
    result = partition_mst(ps, [[i] for i in range(10)])
    # Prim on the complete TD-distance graph
    sig = np.array([[0 if i == j else td_sigma(ps[i], ps[j]) for j in range(10)] for i in range(10)])
    seen, total = {0}, 0.0
    while len(seen) < 10:
        w, j = min((sig[i, j], j) for i in seen for j in range(10) if j not in seen)
        seen.add(j)
        total += w
    assert result.weight == pytest.approx(total, rel=1e-6)


def test_two_blocks_use_smallest_cross_triangle(pointset):
    ps = pointset(9, seed=4)
    part = [[0, 3, 5, 7], [1, 2, 4, 6, 8]]
    (edge,) = partition_mst(ps, part).edges
    best = min((td_sigma(ps[a], ps[b]), a, b) for a in part[0] for b in part[1])
    assert (edge.a, edge.b) == best[1:]


def test_partition_errors(pointset):
    ps = pointset(4)
    with pytest.raises(EmptyPartition):
        partition_mst(ps, [])
    with pytest.raises(EmptyPartition):
        partition_mst(ps, [[0], []])
    with pytest.raises(ValueError):
        partition_mst(ps, [[0, 1], [1, 2]])
    assert partition_mst(ps, [[0, 1, 2, 3]]).edges == ()


@given(st.integers(0, 10_000), st.integers(1, 10))
def test_mst_triangles_are_empty(seed, blocks):
    rng = make_rng(seed)
    ps = random_pointset(int(rng.integers(blocks, 40)), rng)
    result = partition_mst(ps, random_partition(ps.n, blocks, rng))
    assert check_mst_triangles_empty(ps, result)
    assert max_overlap_depth(result) <= 3


def test_enlarged_triangle_is_caught(pointset):
    ps = pointset(12, seed=7)
    result = partition_mst(ps, [[i] for i in range(12)])
    fat = result.triangles.copy()
    fat[0] += 5.0
    fake = PartitionMST(result.blocks, result.edges, fat)
    assert not check_mst_triangles_empty(ps, fake)


def test_depth_of_explicit_arrangements():
    assert max_overlap_depth(np.empty((0, 3))) == 0
    one = tri((0, 0), (0.3, 1))
    assert max_overlap_depth(one[None]) == 1
    far = tri((10, 10), (10.3, 11))
    assert max_overlap_depth(np.stack([one, far])) == 1
    # the second triangle's bottom corner pokes into the first
    poke = tri((0.0, 0.8), (0.2, 1.5))
    assert max_overlap_depth(np.stack([one, poke])) == 2
    assert max_overlap_depth(np.stack([one, one * 0.5, one * 0.25])) == 3


@given(st.integers(0, 10_000), st.integers(2, 8))
def test_depth_bounds_random_probe_depth(seed, count):
    rng = np.random.default_rng(seed)
    pts = rng.random((count, 2, 2))
    tris = np.stack([tri(p, q) for p, q in pts])
    probes = rng.uniform(-1.5, 1.5, (3000, 2))
    u = np.stack([support_values(p).as_array() for p in probes])
    sampled = int((u[:, None, :] < tris[None, :, :]).all(axis=2).sum(axis=1).max())
    assert sampled <= max_overlap_depth(tris)


def test_triangle_exchange_holds_on_sampled_configurations():
    for a, b, p, q, ell in sample_exchange_configurations(make_rng(11), 2000):
        check = check_lemma_triangle3(a, b, p, q, ell)
        assert check.holds and check.lhs < check.rhs


def test_triangle_exchange_rejects_points_below_line():
    a, b, p, q, ell = next(sample_exchange_configurations(make_rng(3), 1))
    lift = (min(p[1], q[1]) + max(p[1], q[1])) / 2
    with pytest.raises(HypothesisNotMet, match="p and q lie above the line"):
        check_lemma_triangle3(a, b, p, q, lift)


def test_triangle_exchange_rejects_coincident_pair():
    with pytest.raises(ValueError):
        check_lemma_triangle3((0, 2), (0, 2), (0, 0), (0.5, 0.2), -1.0)


def components_after_removal(graph, n):
    adj = adjacency_masks(graph)
    full = (1 << n) - 1
    worst = {}
    for mask in range(1 << n):
        k = mask.bit_count()
        if k < n:
            worst[k] = max(worst.get(k, 0), component_count(adj, full & ~mask))
    return worst


@pytest.mark.parametrize("seed", range(4))
def test_component_counts_after_removing_vertices(seed):
    ps = random_pointset(12, make_rng(seed))
    two = components_after_removal(build_ktd_cones(ps, 2), ps.n)
    one = components_after_removal(build_ktd_cones(ps, 1), ps.n)
    for k in two:
        assert two[k] <= min(k + 1, ps.n - k)
        assert one[k] <= min(1.5 * k + 1, ps.n - k)
    # sanity: the complete graph never splits
    assert max(components_after_removal(complete_graph(ps), ps.n).values()) == 1
