import dataclasses

import numpy as np
import pytest

from ktd.combinatorics import is_connected, vertex_connectivity
from ktd.errors import RoleMismatch
from ktd.geometry import PointSet, triangle_area
from ktd.graphs import GeoGraph, build_ktd_cones, build_ktd_definition, complete_graph
from ktd.matching import max_matching
from ktd.sampling import make_rng, random_pointset
from ktd.scenarios import (
    EPS_PRIME,
    WitnessSpec,
    connectivity_witness,
    hamiltonicity_cycle_order,
    load_hamiltonicity_counterexample,
    load_matching_counterexample,
    search_hamiltonicity_counterexample,
    search_matching_counterexample,
    validate,
    validate_connectivity_witness,
    validate_hamiltonicity_counterexample,
    validate_matching_counterexample,
)

MATCHING_CHECKS = ["unit-triangle", "distances", "forced-edge", "not-in-5td"]
HAMILTONICITY_CHECKS = ["unit-triangle", "distances", "cycle", "forced-edge", "not-in-5td"]


def short_graph(spec):
    return complete_graph(spec.points).threshold(float(triangle_area(1 + EPS_PRIME)))


def test_smallest_connectivity_witness():
    spec = connectivity_witness(0, 1, 1)
    assert spec.points.n == 3
    graph = build_ktd_cones(spec.points, 0)
    (middle,) = spec.roles["K"]
    rest = [i for i in range(3) if i != middle]
    sub = GeoGraph(2, [(0, 1, w) for i, j, w in graph.edges if {i, j} == set(rest)])
    assert not is_connected(sub)


@pytest.mark.parametrize("k, size", [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)])
def test_connectivity_witness_is_exact(k, size):
    spec = connectivity_witness(k, size, size, seed=k)
    report = validate_connectivity_witness(spec)
    assert report.passed, report.to_json()
    assert vertex_connectivity(build_ktd_cones(spec.points, k)) == k + 1


def test_connectivity_witness_role_errors():
    spec = connectivity_witness(1, 2, 2)
    bad = dataclasses.replace(spec, roles={"A": [0, 1], "K": [2], "B": [3, 4, 5]})
    with pytest.raises(RoleMismatch):
        validate_connectivity_witness(bad)
    with pytest.raises(ValueError):
        connectivity_witness(-1, 1, 1)


def test_matching_counterexample_passes_every_check():
    report = validate_matching_counterexample(load_matching_counterexample())
    assert [c.name for c in report.checks] == MATCHING_CHECKS
    assert report.passed, report.to_json()


def test_matching_counterexample_needs_ab():
    spec = load_matching_counterexample()
    graph = short_graph(spec)
    assert max_matching(graph.without_edges([(0, 1)]), "exact").size < 7
    assert max_matching(graph, "exact").size == 7
    assert build_ktd_definition(spec.points, 6).has_edge(0, 1)


def test_hamiltonicity_counterexample_passes_every_check():
    report = validate_hamiltonicity_counterexample(load_hamiltonicity_counterexample())
    assert [c.name for c in report.checks] == HAMILTONICITY_CHECKS
    assert report.passed, report.to_json()


def test_hamiltonicity_counterexample_lies_in_order_seven():
    spec = load_hamiltonicity_counterexample()
    assert build_ktd_definition(spec.points, 7).has_edge(0, 1)
    assert not build_ktd_definition(spec.points, 5).has_edge(0, 1)


def test_cycle_order_visits_every_point():
    cyc = hamiltonicity_cycle_order(0, 1, list(range(2, 8)), list(range(8, 17)))
    assert sorted(cyc) == list(range(17))
    assert cyc[-2:] == [0, 1]


def regular_polygon(n, radius=1.0, turn=0.123):
    ang = turn + 2 * np.pi * np.arange(n) / n
    return PointSet(np.stack([radius * np.cos(ang), radius * np.sin(ang)], axis=1))


def test_regular_polygon_fails_unit_triangle():
    spec = WitnessSpec("matching-counterexample", regular_polygon(14),
                       {"a": 0, "b": 1, "U": list(range(2, 8)), "R": list(range(8, 14))})
    report = validate(spec)
    assert not report.passed and "unit-triangle" in report.failed


def test_random_points_fail_unit_triangle():
    ps = random_pointset(17, make_rng(5))
    spec = WitnessSpec("hamiltonicity-counterexample", ps,
                       {"a": 0, "b": 1, "U": list(range(2, 8)), "R": list(range(8, 17))})
    assert "unit-triangle" in validate(spec).failed


def test_perturbed_file_names_the_failed_check():
    spec = load_matching_counterexample()
    xy = spec.points.xy.copy()
    xy[8] += (0.0, 0.01)
    report = validate(dataclasses.replace(spec, points=PointSet(xy)))
    assert report.failed == ["distances"]
    assert "d(8," in dict((c.name, c.detail) for c in report.checks)["distances"]


def test_role_mismatch():
    spec = load_matching_counterexample()
    with pytest.raises(RoleMismatch):
        validate(dataclasses.replace(spec, roles={"a": 0, "b": 1, "U": [2, 3], "R": list(range(4, 14))}))
    with pytest.raises(RoleMismatch):
        validate(dataclasses.replace(spec, roles={"a": 0, "b": 0, "U": list(range(2, 8)), "R": list(range(8, 14))}))
    with pytest.raises(RoleMismatch):
        validate(dataclasses.replace(spec, kind="hamiltonicity-counterexample"))
    with pytest.raises(ValueError):
        WitnessSpec("mystery", spec.points, spec.roles)


@pytest.mark.parametrize("search", [search_matching_counterexample, search_hamiltonicity_counterexample])
def test_search_reproduces_shipped_layouts(search):
    shipped = {"matching-counterexample": load_matching_counterexample,
               "hamiltonicity-counterexample": load_hamiltonicity_counterexample}
    spec = search(seed=0)
    assert spec is not None and validate(spec).passed
    assert spec.to_json() == shipped[spec.kind]().to_json()
