"""Constructed witnesses and validators for the two counterexample layouts.

The connectivity witness stacks three clusters A, K, B so that every
triangle joining A to B swallows all of K.  The counterexamples place a
unit triangle t(a, b) holding six points U, plus outer points R whose only
short links (TD distance <= 1 + eps) are prescribed; that forces (a, b)
into every bottleneck matching or Hamiltonian cycle although t(a, b) holds
six points.  Validators recheck every distance constraint before the
headline claim, so a bad file is reported by the first constraint it breaks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any

import numpy as np

from .combinatorics import hamiltonian_cycle, is_connected, vertex_connectivity
from .errors import RoleMismatch
from .geometry import (
    SQRT3,
    PointSet,
    cone_of,
    hex_norm,
    interior_contains,
    smallest_down_triangle,
    triangle_area,
    validate_general_position,
)
from .graphs import GeoGraph, build_ktd_cones, build_ktd_definition, complete_graph
from .matching import perfect_matchings
from .sampling import make_rng
from .search import ConstraintSystem, improve, jitter_to_general_position

EPS_PRIME = 0.05
DIST_TOL = 1e-9
KINDS = ("connectivity", "hamiltonicity-counterexample", "matching-counterexample")

ROLE_SIZES = {
    "matching-counterexample": {"U": 6, "R": 6},
    "hamiltonicity-counterexample": {"U": 6, "R": 9},
}
POINT_COUNTS = {"matching-counterexample": 14, "hamiltonicity-counterexample": 17}


@dataclass
class WitnessSpec:
    kind: str
    points: PointSet
    roles: dict[str, Any]
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown witness kind {self.kind!r}")
        self.points = PointSet.of(self.points)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "params": dict(self.params),
            "points": [[float(x), float(y)] for x, y in self.points.xy],
            "roles": self.roles,
        }

    @classmethod
    def from_json(cls, data: dict) -> WitnessSpec:
        return cls(data["kind"], PointSet(np.asarray(data["points"], dtype=float)), data["roles"], data.get("params", {}))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerdictReport:
    kind: str
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "passed": self.passed,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }


# -- connectivity witness ---------------------------------------------------


def connectivity_witness(k: int, size_a: int, size_b: int, seed: int = 0, radius: float = 0.1) -> WitnessSpec:
    """A set whose k-TD falls apart once the k + 1 points of K are removed.

    A sits near the origin, K near distance 1 and B near distance 2 along
    the 210 degree ray, the axis of the cone that holds the triangles
    anchored at the upper point.  Cluster radius 0.1 keeps each cluster
    inside the matching cone of every point of the previous cluster.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if size_a < 1 or size_b < 1:
        raise ValueError("cluster sizes must be positive")
    rng = make_rng(seed)
    axis = np.array([np.cos(np.radians(210.0)), np.sin(np.radians(210.0))])
    sizes = (size_a, k + 1, size_b)
    for _ in range(100):
        clusters = []
        for step, size in enumerate(sizes):
            ang = rng.uniform(0, 2 * np.pi, size)
            rad = radius * np.sqrt(rng.random(size))
            clusters.append(step * axis + np.stack([rad * np.cos(ang), rad * np.sin(ang)], axis=1))
        ps = PointSet(np.vstack(clusters))
        if validate_general_position(ps).ok:
            break
    else:
        raise RuntimeError("could not draw a witness in general position")
    a_idx = list(range(size_a))
    k_idx = list(range(size_a, size_a + k + 1))
    b_idx = list(range(size_a + k + 1, ps.n))
    return WitnessSpec("connectivity", ps, {"A": a_idx, "K": k_idx, "B": b_idx},
                       {"k": k, "size_a": size_a, "size_b": size_b, "seed": seed})


def validate_connectivity_witness(spec: WitnessSpec) -> VerdictReport:
    """Cone placement, the K cut, and connectivity exactly k + 1."""
    if spec.kind != "connectivity":
        raise RoleMismatch(f"expected a connectivity witness, got {spec.kind!r}")
    ps = spec.points
    try:
        a_idx, k_idx, b_idx = (list(map(int, spec.roles[r])) for r in ("A", "K", "B"))
        k = int(spec.params["k"])
    except (KeyError, TypeError, ValueError) as exc:
        raise RoleMismatch(f"connectivity witness needs roles A, K, B and parameter k: {exc}") from None
    if len(k_idx) != k + 1 or sorted(a_idx + k_idx + b_idx) != list(range(ps.n)) or not a_idx or not b_idx:
        raise RoleMismatch("roles must partition the points with |K| = k + 1 and A, B nonempty")
    misplaced = [(p, q) for lower, upper in ((a_idx, k_idx), (k_idx, b_idx))
                 for p in lower for q in upper if cone_of(ps[p], ps[q]) != 4]
    checks = [CheckResult("cone-placement", not misplaced,
                          f"misplaced pairs: {misplaced[:5]}" if misplaced else "K below A and B below K in cone 4")]
    graph = build_ktd_cones(ps, k)
    keep = a_idx + b_idx
    index = {v: i for i, v in enumerate(keep)}
    rest = GeoGraph(len(keep), [(index[i], index[j], w) for i, j, w in graph.edges if i in index and j in index])
    split = not is_connected(rest)
    checks.append(CheckResult("cut", split, "removing K disconnects k-TD" if split else "k-TD minus K is connected"))
    kappa = vertex_connectivity(graph) if ps.n > 1 else 0
    exact = kappa == k + 1
    checks.append(CheckResult("connectivity", exact, f"vertex connectivity {kappa}, expected {k + 1}"))
    return VerdictReport("connectivity", tuple(checks))


# -- shared checks ------------------------------------------------------------


def _roles(spec: WitnessSpec, kind: str) -> tuple[int, int, list[int], list[int]]:
    if spec.points.n != POINT_COUNTS[kind]:
        raise RoleMismatch(f"{kind} needs {POINT_COUNTS[kind]} points, got {spec.points.n}")
    roles = spec.roles
    try:
        a, b = int(roles["a"]), int(roles["b"])
        us = [int(i) for i in roles["U"]]
        rs = [int(i) for i in roles["R"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise RoleMismatch(f"roles must provide a, b, U and R: {exc}") from None
    for name, want in ROLE_SIZES[kind].items():
        got = len(us if name == "U" else rs)
        if got != want:
            raise RoleMismatch(f"role {name} needs {want} points, got {got}")
    every = [a, b, *us, *rs]
    if any(not 0 <= i < spec.points.n for i in every):
        raise RoleMismatch("role index out of range")
    if len(set(every)) != len(every):
        raise RoleMismatch("roles must not share points")
    return a, b, us, rs


def _d(ps: PointSet, i: int, j: int) -> float:
    return hex_norm(ps.xy[i] - ps.xy[j])


def _check_unit_triangle(ps: PointSet, a: int, b: int, us: list[int]) -> CheckResult:
    dab = _d(ps, a, b)
    if abs(dab - 1.0) > DIST_TOL:
        return CheckResult("unit-triangle", False, f"d(a,b) = {dab!r}, expected 1")
    tri = smallest_down_triangle(ps[a], ps[b])
    inside = sorted(i for i in range(ps.n) if i not in (a, b) and interior_contains(tri, ps[i]))
    if inside != sorted(us):
        return CheckResult("unit-triangle", False, f"t(a,b) holds {inside}, expected exactly U = {sorted(us)}")
    return CheckResult("unit-triangle", True, "d(a,b) = 1 and t(a,b) holds exactly U")


def _check_short_links(ps: PointSet, rs: list[int], links: dict[int, set[int]], bound: float,
                       exact: bool) -> CheckResult:
    """Each R point is within ``bound`` of its linked points and farther from all others."""
    problems = []
    for r in rs:
        for x in range(ps.n):
            if x == r:
                continue
            d = _d(ps, r, x)
            if x in links[r]:
                ok = abs(d - bound) <= DIST_TOL if exact else d <= bound + DIST_TOL
                if not ok:
                    problems.append(f"d({r},{x}) = {d:.12g} should be {'=' if exact else '<='} {bound}")
            elif d <= bound + DIST_TOL:
                problems.append(f"d({r},{x}) = {d:.12g} should exceed {bound}")
    if problems:
        return CheckResult("distances", False, "; ".join(problems[:5]))
    return CheckResult("distances", True, f"every R point has only its prescribed links within {bound}")


def _threshold_graph(ps: PointSet, bound: float) -> GeoGraph:
    # edge weights are triangle areas; convert the distance bound
    return complete_graph(ps).threshold(float(triangle_area(bound)))


def _check_not_in_5td(ps: PointSet, a: int, b: int) -> CheckResult:
    graph = build_ktd_definition(ps, 5)
    if graph.has_edge(a, b):
        return CheckResult("not-in-5td", False, "(a,b) is an edge of 5-TD")
    return CheckResult("not-in-5td", True, "(a,b) is not an edge of 5-TD")


# -- matching counterexample ---------------------------------------------------


def validate_matching_counterexample(spec: WitnessSpec, eps: float = EPS_PRIME) -> VerdictReport:
    """Four checks on the 14-point layout; r_i is paired with u_i by role order."""
    kind = "matching-counterexample"
    a, b, us, rs = _roles(spec, kind)
    ps = spec.points
    bound = 1.0 + eps
    checks = [
        _check_unit_triangle(ps, a, b, us),
        _check_short_links(ps, rs, {r: {u} for r, u in zip(rs, us)}, bound, exact=True),
    ]
    graph = _threshold_graph(ps, bound)
    ab = (min(a, b), max(a, b))
    total = missing = 0
    for m in perfect_matchings(graph):
        total += 1
        if ab not in {(min(i, j), max(i, j)) for i, j in m}:
            missing += 1
    if total == 0:
        checks.append(CheckResult("forced-edge", False, f"no perfect matching with bottleneck <= {bound}"))
    elif missing:
        checks.append(CheckResult("forced-edge", False, f"{missing} of {total} perfect matchings avoid (a,b)"))
    else:
        checks.append(CheckResult("forced-edge", True, f"all {total} perfect matchings with bottleneck <= {bound} use (a,b)"))
    checks.append(_check_not_in_5td(ps, a, b))
    return VerdictReport(kind, tuple(checks))


# -- Hamiltonicity counterexample -----------------------------------------------


def hamiltonicity_cycle_order(a: int, b: int, us: list[int], rs: list[int]) -> list[int]:
    """The prescribed cycle u4 r4 u5 r5 u6 r6 t1 t2 t3 r1 u1 r2 u2 r3 u3 a b."""
    u = dict(zip(range(1, 7), us))
    t = dict(zip(range(1, 4), rs[:3]))
    r = dict(zip(range(1, 7), rs[3:]))
    return [u[4], r[4], u[5], r[5], u[6], r[6], t[1], t[2], t[3], r[1], u[1], r[2], u[2], r[3], u[3], a, b]


def _hamiltonicity_links(us: list[int], rs: list[int]) -> dict[int, set[int]]:
    """The two short links of each R point along the prescribed cycle."""
    cyc = hamiltonicity_cycle_order(-1, -2, us, rs)
    links = {}
    for pos, v in enumerate(cyc):
        if v in rs:
            links[v] = {cyc[pos - 1], cyc[(pos + 1) % len(cyc)]}
    return links


def validate_hamiltonicity_counterexample(spec: WitnessSpec, eps: float = EPS_PRIME) -> VerdictReport:
    """Checks on the 17-point layout.

    Roles: U = (u1..u6), R = (t1, t2, t3, r1..r6).  Short links of R points
    are only bounded above (``<= 1 + eps``), not pinned to equality.
    """
    kind = "hamiltonicity-counterexample"
    a, b, us, rs = _roles(spec, kind)
    ps = spec.points
    bound = 1.0 + eps
    checks = [
        _check_unit_triangle(ps, a, b, us),
        _check_short_links(ps, rs, _hamiltonicity_links(us, rs), bound, exact=False),
    ]
    graph = _threshold_graph(ps, bound)
    cyc = hamiltonicity_cycle_order(a, b, us, rs)
    absent = [(x, y) for x, y in zip(cyc, cyc[1:] + cyc[:1]) if not graph.has_edge(x, y)]
    if sorted(cyc) != list(range(ps.n)):
        checks.append(CheckResult("cycle", False, "the prescribed cycle does not visit every point once"))
    elif absent:
        checks.append(CheckResult("cycle", False, f"cycle edges longer than {bound}: {absent}"))
    else:
        checks.append(CheckResult("cycle", True, f"the prescribed Hamiltonian cycle has bottleneck <= {bound}"))
    other = hamiltonian_cycle(graph.without_edges([(a, b)]))
    if other is not None:
        checks.append(CheckResult("forced-edge", False, f"Hamiltonian cycle avoiding (a,b): {other}"))
    else:
        checks.append(CheckResult("forced-edge", True, f"no Hamiltonian cycle with bottleneck <= {bound} avoids (a,b)"))
    checks.append(_check_not_in_5td(ps, a, b))
    return VerdictReport(kind, tuple(checks))


def validate(spec: WitnessSpec, eps: float = EPS_PRIME) -> VerdictReport:
    if spec.kind == "connectivity":
        return validate_connectivity_witness(spec)
    if spec.kind == "matching-counterexample":
        return validate_matching_counterexample(spec, eps)
    if spec.kind == "hamiltonicity-counterexample":
        return validate_hamiltonicity_counterexample(spec, eps)
    raise ValueError(f"no validator for witness kind {spec.kind!r}")


# -- shipped layouts -------------------------------------------------------------

_DATA_FILES = {
    "matching-counterexample": "matching_counterexample.json",
    "hamiltonicity-counterexample": "hamiltonicity_counterexample.json",
}


def load_counterexample(kind: str) -> WitnessSpec:
    text = resources.files("ktd.data").joinpath(_DATA_FILES[kind]).read_text()
    return WitnessSpec.from_json(json.loads(text))


def load_matching_counterexample() -> WitnessSpec:
    return load_counterexample("matching-counterexample")


def load_hamiltonicity_counterexample() -> WitnessSpec:
    return load_counterexample("hamiltonicity-counterexample")


# -- regeneration by constraint-guided search ------------------------------------
#
# Index layout: a = 0 at the origin, b = 1 on the top side y = 1, U = 2..7,
# then R.  The starting layouts below were sketched by hand: each outer
# point sits where its hexagon of radius 1 + eps only grazes the triangle
# near its own U points.

_MATCHING_START = [
    (0.0, 0.0), (0.0, 1.0),
    (-0.4215, 0.82), (-0.4215, 0.91), (0.4215, 0.91), (0.0779, 0.955), (0.4215, 0.82), (-0.0779, 0.955),
    (-1.2124, 0.09), (-1.4751, 1.185), (1.4751, 1.185), (0.6842, 2.005), (1.2124, 0.09), (-0.6842, 2.005),
]

# U = u1..u6, then t1, t2, t3, r1..r6
_HAMILTONICITY_START = [
    (0.0, 0.0), (0.0, 1.0),
    (0.45, 0.97), (0.488, 0.88), (0.269, 0.5), (-0.269, 0.5), (-0.488, 0.88), (-0.45, 0.97),
    (-0.9, 3.0), (0.0, 3.3), (0.9, 3.0),
    (0.6842, 2.005), (1.4751, 1.185), (1.2124, 0.09), (-1.2124, 0.09), (-1.4751, 1.185), (-0.6842, 2.005),
]


def _base_system(n: int) -> ConstraintSystem:
    s = ConstraintSystem(n)
    s.fixed[0] = (0.0, 0.0)
    s.on_horizontal.append((1, 1.0, -1.0 / SQRT3, 1.0 / SQRT3))
    for u in range(2, 8):
        # strictly inside t(a, b): support values below (1, 0, 0)
        s.inside.append((u, (1.0, 0.0, 0.0)))
    return s


def matching_constraints(eps: float = EPS_PRIME) -> ConstraintSystem:
    c = 1.0 + eps
    s = _base_system(14)
    rs = range(8, 14)
    for r in rs:
        u = r - 6
        s.equal.append((r, u, c))
        for x in range(14):
            if x not in (r, u) and not (x in rs and x < r):
                s.lower.append((r, x, c))
    return s


def hamiltonicity_constraints(eps: float = EPS_PRIME) -> ConstraintSystem:
    c = 1.0 + eps
    s = _base_system(17)
    s.strict_upper = True
    us, rs = list(range(2, 8)), list(range(8, 17))
    links = _hamiltonicity_links(us, rs)
    pairs = {(min(r, x), max(r, x)) for r in rs for x in range(17) if x != r}
    for i, j in sorted(pairs):
        r, x = (j, i) if j in rs else (i, j)
        if x in links[r]:
            s.upper.append((r, x, c))
        else:
            s.lower.append((r, x, c))
    return s


def _search(kind: str, system: ConstraintSystem, start: list, seed: int, attempts: int, noise: float,
            eps: float) -> WitnessSpec | None:
    rng = make_rng(seed)
    base = np.asarray(start, dtype=float)
    roles = {"a": 0, "b": 1, "U": list(range(2, 8)), "R": list(range(8, len(start)))}
    for attempt in range(attempts):
        xy = base.copy()
        if attempt:
            xy[2:] += rng.uniform(-noise, noise, xy[2:].shape)
        xy, margin = improve(system, xy)
        if not margin > 0:
            continue
        jittered = jitter_to_general_position(system, xy, rng, scale=margin / 4)
        if jittered is None:
            continue
        spec = WitnessSpec(kind, PointSet(jittered), roles,
                           {"eps": eps, "seed": seed, "margin": round(float(system.slack(jittered)), 6)})
        if validate(spec, eps).passed:
            return spec
    return None


def search_matching_counterexample(seed: int = 0, attempts: int = 20, eps: float = EPS_PRIME) -> WitnessSpec | None:
    return _search("matching-counterexample", matching_constraints(eps), _MATCHING_START, seed, attempts, 0.01, eps)


def search_hamiltonicity_counterexample(seed: int = 0, attempts: int = 20,
                                        eps: float = EPS_PRIME) -> WitnessSpec | None:
    return _search("hamiltonicity-counterexample", hamiltonicity_constraints(eps), _HAMILTONICITY_START, seed,
                   attempts, 0.01, eps)
