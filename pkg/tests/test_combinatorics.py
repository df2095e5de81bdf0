import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_graph
from ktd.combinatorics import (
    articulation_points,
    bottleneck_in_graph,
    bottleneck_value,
    bottleneck_within_ktd,
    distinct_weights,
    feasible,
    hamiltonian_cycle,
    is_biconnected,
    is_connected,
    is_hamiltonian,
    vertex_connectivity,
)
from ktd.errors import OddN, SizeLimit
from ktd.graphs import GeoGraph, build_ktd_cones, complete_graph
from ktd.sampling import make_rng, random_pointset
from oracles import all_perfect_matchings, to_nx

# 0-TD of this set is a triangle and a path hanging off it
PENDANT = [(0.014, 0.258), (0.472, 0.091), (0.979, 0.256), (0.936, 0.19), (0.036, 0.056)]


def complete(n):
    return GeoGraph.from_pairs(n, itertools.combinations(range(n), 2))


def test_connectivity_small_cases():
    assert vertex_connectivity(GeoGraph.from_pairs(3, [(0, 1), (1, 2)])) == 1
    assert vertex_connectivity(complete(4)) == 3
    assert vertex_connectivity(GeoGraph.from_pairs(3, [(0, 1)])) == 0
    assert is_connected(complete(1))


@given(st.integers(0, 10_000), st.integers(2, 16), st.floats(0.1, 0.9))
def test_connectivity_agrees_with_networkx(seed, n, p):
    pairs = random_graph(n, p, seed)
    g = GeoGraph.from_pairs(n, pairs)
    ref = nx.Graph()
    ref.add_nodes_from(range(n))
    ref.add_edges_from(pairs)
    assert vertex_connectivity(g) == nx.node_connectivity(ref)
    assert is_connected(g) == nx.is_connected(ref)
    assert articulation_points(g) == set(nx.articulation_points(ref))


def test_biconnected_small_cases():
    assert is_biconnected(GeoGraph.from_pairs(3, [(0, 1), (1, 2), (0, 2)]))
    assert not is_biconnected(GeoGraph.from_pairs(3, [(0, 1), (1, 2)]))


def test_zero_order_graph_with_cut_vertex():
    g = build_ktd_cones(PENDANT, 0)
    assert not is_biconnected(g)
    assert articulation_points(g) == set(nx.articulation_points(to_nx(g))) == {1, 3}


def brute_hamiltonian(n, edges):
    if n < 3:
        return False
    adj = {(i, j) for i, j in edges} | {(j, i) for i, j in edges}
    for perm in itertools.permutations(range(1, n)):
        cyc = (0,) + perm
        if all((cyc[i], cyc[(i + 1) % n]) in adj for i in range(n)):
            return True
    return False


@given(st.integers(0, 10_000), st.integers(3, 8), st.floats(0.2, 0.9))
def test_hamiltonicity_agrees_with_brute_force(seed, n, p):
    pairs = random_graph(n, p, seed)
    g = GeoGraph.from_pairs(n, pairs)
    expected = brute_hamiltonian(n, pairs)
    assert is_hamiltonian(g) == expected
    cyc = hamiltonian_cycle(g)
    assert (cyc is not None) == expected
    if cyc:
        assert sorted(cyc) == list(range(n))
        assert all(g.has_edge(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1]))


def test_bottleneck_triangle_and_single_edge(pointset):
    ps = pointset(3, seed=1)
    full = complete_graph(ps)
    assert bottleneck_value(ps, "hamiltonian").lam == max(w for *_, w in full.edges)
    two = pointset(2, seed=1)
    assert bottleneck_value(two, "matching").lam == complete_graph(two).edges[0][2]


@pytest.mark.parametrize("seed", range(5))
def test_bottleneck_matching_matches_enumeration(seed):
    ps = random_pointset(8, make_rng(seed))
    full = complete_graph(ps)
    w = {(i, j): x for i, j, x in full.edges}
    best = min(max(w[e] for e in m) for m in all_perfect_matchings(8))
    result = bottleneck_value(ps, "matching")
    assert result.lam == best
    assert max(w[e] for e in result.edges) == best


@pytest.mark.parametrize("seed", range(3))
def test_bottleneck_hamiltonian_matches_enumeration(seed):
    ps = random_pointset(7, make_rng(seed))
    w = {(i, j): x for i, j, x in complete_graph(ps).edges}
    best = min(
        max(w[min(a, b), max(a, b)] for a, b in zip((0,) + p, p + (0,)))
        for p in itertools.permutations(range(1, 7))
    )
    assert bottleneck_value(ps, "hamiltonian").lam == best


def test_bottleneck_in_disconnected_graph_is_none():
    assert bottleneck_in_graph(GeoGraph.from_pairs(4, [(0, 1)]), "matching") is None


def test_ties_merge():
    g = GeoGraph(3, [(0, 1, 1.0), (1, 2, 1.0 + 1e-14), (0, 2, 2.0)])
    assert distinct_weights(g) == [1.0 + 1e-14, 2.0]


def test_bottleneck_errors(pointset):
    with pytest.raises(OddN):
        bottleneck_value(pointset(5), "matching")
    with pytest.raises(SizeLimit):
        bottleneck_value(pointset(19), "hamiltonian")
    with pytest.raises(ValueError):
        bottleneck_value(pointset(2), "biconnected")
    with pytest.raises(ValueError):
        feasible(complete(4), "spanning-star")


@pytest.mark.parametrize("kind, k, n", [("biconnected", 1, 20), ("hamiltonian", 7, 10), ("matching", 6, 24)])
def test_bottleneck_within_ktd(kind, k, n):
    for seed in range(3):
        assert bottleneck_within_ktd(random_pointset(n, make_rng(seed)), kind, k)


def test_connectivity_of_ktd(pointset):
    for k in range(4):
        assert vertex_connectivity(build_ktd_cones(pointset(30, seed=k), k)) >= k + 1
