"""Minimum spanning trees over partitions and their triangles.

For a partition of a point set, the block graph joins every two blocks with
weight ``min sigma(t(a, b))`` over cross pairs.  The triangles realizing the
edges of its MST are empty of points and overlap at most three deep; both
facts are checked here, together with the four-point inequality they rest
on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EmptyPartition, HypothesisNotMet
from .geometry import NORMALS, DownTriangle, PointSet, SupportTriple, support_values


@dataclass(frozen=True)
class TreeEdge:
    block_i: int
    block_j: int
    a: int
    b: int
    sigma: float


@dataclass(frozen=True)
class PartitionMST:
    blocks: tuple[tuple[int, ...], ...]
    edges: tuple[TreeEdge, ...]
    # one row of support values per tree edge
    triangles: np.ndarray

    @property
    def weight(self) -> float:
        return sum(e.sigma for e in self.edges)

    def down_triangles(self) -> list[DownTriangle]:
        return [DownTriangle(SupportTriple(*map(float, t))) for t in self.triangles]


class _DisjointSet:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def block_graph(points: PointSet, blocks: Sequence[Sequence[int]]) -> list[tuple[float, int, int, int, int]]:
    """Edges ``(sigma, i, j, a, b)`` of the complete block graph, i < j."""
    u = PointSet.of(points).support
    out = []
    for i in range(len(blocks)):
        bi = np.asarray(blocks[i])
        for j in range(i + 1, len(blocks)):
            bj = np.asarray(blocks[j])
            sig = np.maximum(u[bi][:, None, :], u[bj][None, :, :]).sum(axis=2)
            r, c = np.unravel_index(int(np.argmin(sig)), sig.shape)
            out.append((float(sig[r, c]), i, j, int(bi[r]), int(bj[c])))
    return out


def partition_mst(points: PointSet, blocks: Sequence[Sequence[int]]) -> PartitionMST:
    """Kruskal on the block graph; ties go to the smaller ``(i, j)``."""
    ps = PointSet.of(points)
    if not blocks or any(len(b) == 0 for b in blocks):
        raise EmptyPartition("partition needs at least one block and no empty blocks")
    flat = [x for b in blocks for x in b]
    if len(set(flat)) != len(flat):
        raise ValueError("blocks must be pairwise disjoint")
    dsu = _DisjointSet(len(blocks))
    chosen = []
    for sig, i, j, a, b in sorted(block_graph(ps, blocks)):
        if dsu.union(i, j):
            chosen.append(TreeEdge(i, j, a, b, sig))
    u = ps.support
    tris = np.array([np.maximum(u[e.a], u[e.b]) for e in chosen]).reshape(-1, 3)
    return PartitionMST(tuple(tuple(int(x) for x in b) for b in blocks), tuple(chosen), tris)


def check_mst_triangles_empty(points: PointSet, result: PartitionMST) -> bool:
    """No MST triangle holds a point of ``points`` in its interior."""
    u = PointSet.of(points).support
    if len(result.triangles) == 0:
        return True
    inside = (u[None, :, :] < result.triangles[:, None, :]).all(axis=2)
    return not inside.any()


def _depth(samples: np.ndarray, triangles: np.ndarray) -> np.ndarray:
    return (samples[:, None, :] < triangles[None, :, :]).all(axis=2).sum(axis=1)


def _min_gap(values: np.ndarray) -> float:
    d = np.diff(np.unique(values))
    d = d[d > 0]
    return float(d.min()) if d.size else math.inf


def max_overlap_depth(result: PartitionMST | np.ndarray) -> int:
    """Largest number of triangles whose interiors share a common point.

    Depth is constant on each face of the arrangement of the triangles' side
    lines.  All those lines run at 0, 60 or 120 degrees, so every face meets
    some line-intersection vertex inside a sector that contains one of the
    directions 30 + 60j degrees.  Each vertex is therefore probed at a small
    radius in those six directions; the radius is kept below half the
    closest approach of any line to any vertex so probes stay in their face.
    """
    tris = result.triangles if isinstance(result, PartitionMST) else np.asarray(result, dtype=float)
    tris = np.asarray(tris, dtype=float).reshape(-1, 3)
    if len(tris) <= 1:
        return len(tris)
    fam = [np.unique(tris[:, k]) for k in range(3)]
    verts = []
    for a, b, c in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
        va, vb = np.meshgrid(fam[a], fam[b], indexing="ij")
        v = np.empty(va.shape + (3,))
        v[..., a], v[..., b], v[..., c] = va, vb, -va - vb
        verts.append(v.reshape(-1, 3))
    verts = np.unique(np.vstack(verts), axis=0)

    gap = min(_min_gap(f) for f in fam)
    for k in range(3):
        idx = np.clip(np.searchsorted(fam[k], verts[:, k]), 1, len(fam[k]) - 1)
        near = np.minimum(np.abs(verts[:, k] - fam[k][idx - 1]), np.abs(verts[:, k] - fam[k][idx]))
        near = near[near > 1e-15]
        if near.size:
            gap = min(gap, float(near.min()))
    scale = float(np.abs(tris).max()) or 1.0
    radius = min(0.5 * gap, 1e-7 * scale)

    angles = np.radians(30.0 + 60.0 * np.arange(6))
    steps = np.stack([np.cos(angles), np.sin(angles)], axis=1) @ NORMALS.T
    centroids = np.stack([2 * tris[:, 0] - tris[:, 1] - tris[:, 2],
                          2 * tris[:, 1] - tris[:, 0] - tris[:, 2],
                          2 * tris[:, 2] - tris[:, 0] - tris[:, 1]], axis=1) / 3.0

    def probe(r: float) -> int:
        samples = (verts[:, None, :] + r * steps[None, :, :]).reshape(-1, 3)
        return int(_depth(np.vstack([samples, centroids]), tris).max())

    depth = probe(radius)
    if depth > 3:
        # recheck at a finer radius before reporting a depth-4 point
        depth = probe(radius * 1e-2)
    return depth


def _side_labels(x: Sequence[float], y: Sequence[float]) -> tuple[np.ndarray, np.ndarray, int]:
    """Order a pair so the first lies on the lower-left side of t(x, y)."""
    ux, uy = support_values(x).as_array(), support_values(y).as_array()
    if ux[1] >= uy[1]:
        return ux, uy, 0
    return uy, ux, 1


@dataclass(frozen=True)
class ExchangeCheck:
    holds: bool
    lhs: float
    rhs: float


def exchange_hypotheses(a, b, p, q, ell: float) -> list[str]:
    """Names of the hypotheses that fail (empty when all hold)."""
    ua, ub = support_values(a).as_array(), support_values(b).as_array()
    up, uq = support_values(p).as_array(), support_values(q).as_array()
    tab, tpq = np.maximum(ua, ub), np.maximum(up, uq)
    failed = []
    for name, t in (("t(a,b)", tab), ("t(p,q)", tpq)):
        if not (-(t[1] + t[2]) < ell < t[0]):
            failed.append(f"{name} crosses the horizontal line")
    lowest = np.array([-(tab[1] + tab[2]), tab[1], tab[2]])
    if not (lowest < tpq).all():
        failed.append("t(p,q) contains the lowest corner of t(a,b)")
    if not (a[1] > tpq[0] and b[1] > tpq[0]):
        failed.append("a and b lie above top(p,q)")
    if not (p[1] > ell and q[1] > ell):
        failed.append("p and q lie above the line")
    return failed


def check_lemma_triangle3(a, b, p, q, ell: float) -> ExchangeCheck:
    """Test ``max(t(a,p), t(b,q)) < max(t(a,b), t(p,q))`` on one configuration.

    The pairs are labelled internally: ``a`` is whichever of the first pair
    lies on the lower-left side of t(a, b), and likewise ``p`` for t(p, q).
    Raises HypothesisNotMet when the configuration is out of scope.
    """
    if tuple(a) == tuple(b) or tuple(p) == tuple(q):
        raise ValueError("defining points of a triangle must be distinct")
    failed = exchange_hypotheses(a, b, p, q, ell)
    if failed:
        raise HypothesisNotMet("; ".join(failed))
    ua, ub, _ = _side_labels(a, b)
    up, uq, _ = _side_labels(p, q)
    lhs = max(np.maximum(ua, up).sum(), np.maximum(ub, uq).sum())
    rhs = max(np.maximum(ua, ub).sum(), np.maximum(up, uq).sum())
    return ExchangeCheck(bool(lhs < rhs), float(lhs), float(rhs))


def sample_exchange_configurations(rng: np.random.Generator, count: int, batch: int = 200_000):
    """Yield ``(a, b, p, q, ell)`` tuples satisfying every hypothesis of check_lemma_triangle3.

    p, q are drawn in a box, a, b above top(p, q) and the line below both
    p and q; the exact hypothesis predicate then filters the batch.
    """
    produced = 0
    while produced < count:
        pq = rng.uniform(-1.0, 1.0, (batch, 2, 2))
        top = pq[:, :, 1].max(axis=1)
        ab = np.empty((batch, 2, 2))
        ab[:, :, 0] = rng.uniform(-1.5, 1.5, (batch, 2))
        ab[:, :, 1] = top[:, None] + rng.uniform(0.0, 1.0, (batch, 2))
        low = pq[:, :, 1].min(axis=1)
        ell = low - rng.uniform(0.0, 1.0, batch)
        u = np.concatenate([ab, pq], axis=1) @ NORMALS.T
        tab = np.maximum(u[:, 0], u[:, 1])
        tpq = np.maximum(u[:, 2], u[:, 3])
        lowest = np.stack([-(tab[:, 1] + tab[:, 2]), tab[:, 1], tab[:, 2]], axis=1)
        keep = (
            (-(tab[:, 1] + tab[:, 2]) < ell)
            & (ell < tab[:, 0])
            & (-(tpq[:, 1] + tpq[:, 2]) < ell)
            & (lowest < tpq).all(axis=1)
        )
        for i in np.flatnonzero(keep):
            if produced >= count:
                return
            a, b = tuple(ab[i, 0]), tuple(ab[i, 1])
            p, q = tuple(pq[i, 0]), tuple(pq[i, 1])
            if exchange_hypotheses(a, b, p, q, float(ell[i])):
                continue
            produced += 1
            yield a, b, p, q, float(ell[i])
