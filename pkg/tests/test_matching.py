import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_graph
from ktd.errors import SizeLimit
from ktd.graphs import GeoGraph
from ktd.matching import has_perfect_matching, max_matching, perfect_matchings, tutte_berge_deficiency
from oracles import all_perfect_matchings


def is_matching(graph, edges):
    used = [v for e in edges for v in e]
    return len(used) == len(set(used)) and all(graph.has_edge(i, j) for i, j in edges)


@pytest.mark.parametrize(
    "pairs, n, size",
    [([(0, 1)], 2, 1), ([(0, 1), (0, 2), (0, 3)], 4, 1), ([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], 5, 2), ([], 3, 0)],
)
def test_small_graphs(pairs, n, size):
    g = GeoGraph.from_pairs(n, pairs)
    for method in ("exact", "blossom", "auto"):
        report = max_matching(g, method)
        assert report.size == size and is_matching(g, report.edges)


def test_star_deficiency():
    report = tutte_berge_deficiency(GeoGraph.from_pairs(4, [(0, 1), (0, 2), (0, 3)]))
    assert report.witness == (0,)
    assert (report.odd_components, report.deficiency, report.matching_size) == (3, 2, 1)


def test_perfect_matchable_has_zero_deficiency():
    g = GeoGraph.from_pairs(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)])
    assert tutte_berge_deficiency(g).deficiency == 0
    assert has_perfect_matching(g)


@given(st.integers(0, 10_000), st.integers(1, 14), st.floats(0.05, 0.6))
def test_exact_agrees_with_tutte_berge(seed, n, p):
    g = GeoGraph.from_pairs(n, random_graph(n, p, seed))
    assert max_matching(g, "exact").size == tutte_berge_deficiency(g).matching_size


@given(st.integers(0, 10_000), st.integers(1, 40), st.floats(0.02, 0.5))
def test_blossom_agrees_with_networkx(seed, n, p):
    pairs = random_graph(n, p, seed)
    g = GeoGraph.from_pairs(n, pairs)
    ref = nx.Graph(pairs)
    expected = len(nx.max_weight_matching(ref, maxcardinality=True))
    report = max_matching(g, "blossom")
    assert report.size == expected and is_matching(g, report.edges)
    if n <= 20:
        assert max_matching(g, "exact").size == expected


def test_perfect_matching_enumeration_counts():
    complete = GeoGraph.from_pairs(8, [(i, j) for i in range(8) for j in range(i + 1, 8)])
    found = {tuple(sorted(m)) for m in perfect_matchings(complete)}
    expected = {tuple(sorted(m)) for m in all_perfect_matchings(8)}
    assert len(found) == len(expected) == 105
    assert found == expected
    assert list(perfect_matchings(GeoGraph.from_pairs(3, [(0, 1), (1, 2)]))) == []


def test_size_caps():
    with pytest.raises(SizeLimit):
        tutte_berge_deficiency(GeoGraph(21, []))
    with pytest.raises(ValueError):
        max_matching(GeoGraph(2, []), "greedy")
