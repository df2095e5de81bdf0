"""Order-k TD-Delaunay graphs.

Two independent builders are provided: :func:`build_ktd_definition` counts
interior points of every ``t(p, q)`` directly, :func:`build_ktd_cones`
keeps the ``k + 1`` nearest neighbours in every even cone.  They must agree
on every point set in general position.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .errors import DegenerateDirection
from .geometry import TIE_TOL, PointSet, pairwise_sigma, triangle_area

Edge = tuple[int, int, float]


@dataclass
class GeoGraph:
    """Weighted graph over indices into ``points``; weight = area of t(p, q)."""

    n: int
    edges: list[Edge]
    points: PointSet | None = None
    k: int | None = None
    adjacency: list[set[int]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.points is not None and len(self.points) != self.n:
            raise ValueError("vertex count does not match the point set")
        self.edges = sorted((min(i, j), max(i, j), float(w)) for i, j, w in self.edges)
        self.adjacency = [set() for _ in range(self.n)]
        for i, j, _ in self.edges:
            if i == j:
                raise ValueError(f"self-loop at {i}")
            if j in self.adjacency[i]:
                raise ValueError(f"duplicate edge ({i}, {j})")
            self.adjacency[i].add(j)
            self.adjacency[j].add(i)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def edge_set(self) -> set[tuple[int, int]]:
        return {(i, j) for i, j, _ in self.edges}

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adjacency[i]

    def weight(self, i: int, j: int) -> float:
        for a, b, w in self.edges:
            if (a, b) == (min(i, j), max(i, j)):
                return w
        raise KeyError((i, j))

    def threshold(self, lam: float) -> GeoGraph:
        """Subgraph of edges with weight <= ``lam`` (ties within TIE_TOL included)."""
        cut = lam + TIE_TOL * max(1.0, abs(lam))
        return GeoGraph(self.n, [e for e in self.edges if e[2] <= cut], self.points, self.k)

    def without_edges(self, drop: Iterable[tuple[int, int]]) -> GeoGraph:
        gone = {(min(i, j), max(i, j)) for i, j in drop}
        return GeoGraph(self.n, [e for e in self.edges if (e[0], e[1]) not in gone], self.points, self.k)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> GeoGraph:
        """Abstract unit-weight graph, handy for combinatorial tests."""
        return cls(n, [(i, j, 1.0) for i, j in pairs])

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "edges": [[i, j, w] for i, j, w in self.edges]}


@dataclass(frozen=True, order=True)
class WeightSequence:
    """Edge weights in non-increasing order; compares lexicographically."""

    weights: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.weights)


def complete_graph(points: PointSet) -> GeoGraph:
    ps = PointSet.of(points)
    area = triangle_area(pairwise_sigma(ps.support))
    iu, ju = np.triu_indices(ps.n, 1)
    return GeoGraph(ps.n, list(zip(iu.tolist(), ju.tolist(), area[iu, ju].tolist())), ps)


def interior_counts(points: PointSet) -> np.ndarray:
    """``counts[i, j]`` = number of points strictly inside t(p_i, p_j)."""
    ps = PointSet.of(points)
    u = ps.support
    n = ps.n
    counts = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        tri = np.maximum(u[i], u[i + 1 :])
        inside = (u[None, :, :] < tri[:, None, :]).all(axis=2)
        # p_i and p_j sit on the boundary, never strictly inside
        inside[:, i] = False
        inside[np.arange(n - i - 1), np.arange(i + 1, n)] = False
        c = inside.sum(axis=1)
        counts[i, i + 1 :] = c
        counts[i + 1 :, i] = c
    return counts


def build_ktd_definition(points: PointSet, k: int) -> GeoGraph:
    """Edge (i, j) iff the interior of t(p_i, p_j) holds at most k points."""
    if k < 0:
        raise ValueError("k must be non-negative")
    ps = PointSet.of(points).validate()
    counts = interior_counts(ps)
    area = triangle_area(pairwise_sigma(ps.support))
    iu, ju = np.triu_indices(ps.n, 1)
    keep = counts[iu, ju] <= k
    edges = list(zip(iu[keep].tolist(), ju[keep].tolist(), area[iu[keep], ju[keep]].tolist()))
    return GeoGraph(ps.n, edges, ps, k)


def build_ktd_cones(points: PointSet, k: int) -> GeoGraph:
    """Connect every point to its k+1 TD-nearest neighbours per even cone.

    With ``v = q - p`` in support coordinates, q lies in an even cone of p
    exactly when one component of ``v`` is positive; that component names
    the cone (0 -> cone 2, 1 -> cone 4, 2 -> cone 6) and equals d(p, q).
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    ps = PointSet.of(points).validate()
    u = ps.support
    found: set[tuple[int, int]] = set()
    for p in range(ps.n):
        v = u - u[p]
        positive = v > 0
        single = positive.sum(axis=1) == 1
        single[p] = False
        for axis in range(3):
            cand = np.flatnonzero(single & positive[:, axis])
            if cand.size == 0:
                continue
            dist = v[cand, axis]
            order = np.argsort(dist, kind="stable")
            take = order[: k + 1]
            if cand.size > k + 1:
                near, far = dist[order[k]], dist[order[k + 1]]
                if far - near <= TIE_TOL:
                    raise DegenerateDirection(f"tie for nearest neighbour of point {p} in an even cone")
            for q in cand[take]:
                found.add((min(p, int(q)), max(p, int(q))))
    area = triangle_area(pairwise_sigma(u))
    return GeoGraph(ps.n, [(i, j, float(area[i, j])) for i, j in sorted(found)], ps, k)


def weight_sequence(graph: GeoGraph) -> WeightSequence:
    return WeightSequence(tuple(sorted((w for _, _, w in graph.edges), reverse=True)))
