"""Blocking sets: extra points that make P independent in k-TD(P + K)."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidPointSet, NotABlocker
from .geometry import PointSet, validate_general_position
from .graphs import build_ktd_cones

MAX_JITTER_RETRIES = 10


@dataclass(frozen=True)
class BlockingInstance:
    base: PointSet
    blockers: PointSet
    k: int
    delta: float
    eps: float


@dataclass(frozen=True)
class LowerBoundReport:
    n: int
    k: int
    size: int
    mst_bound: int
    matching_bound: int | None

    @property
    def bound(self) -> int:
        return max(self.mst_bound, self.matching_bound or 0)

    @property
    def respects_bound(self) -> bool:
        return self.size >= self.bound


def blocks(base: PointSet, blockers: PointSet, k: int) -> bool:
    """True iff no k-TD edge of ``base + blockers`` joins two base points."""
    base = PointSet.of(base)
    blockers = PointSet.of(blockers)
    n = base.n
    if n < 2:
        return True
    graph = build_ktd_cones(base.union(blockers), k)
    return not any(i < n and j < n for i, j, _ in graph.edges)


def vertical_spacing(points: PointSet) -> float:
    """Smallest vertical gap between two points."""
    ys = np.sort(PointSet.of(points).xy[:, 1])
    return float(np.diff(ys).min()) if len(ys) > 1 else math.inf


def blocking_instance(points: PointSet, k: int, rng: np.random.Generator | None = None) -> BlockingInstance:
    """Place ``k + 1`` blockers just above each point but the topmost.

    Copy j of the blocker for ``p`` sits at height ``eps * (1 + j / (k + 2))``
    above ``p`` with ``eps = delta / 2``, so every copy stays below the next
    point up.  For k = 0 the blocker sits straight above ``p``; for larger k
    copies are shifted sideways by ``delta * 1e-6 * (j + 1)`` to keep them
    distinct.  If the union is not in general position the sideways shifts
    are redrawn at random.
    """
    ps = PointSet.of(points).validate()
    n = ps.n
    if n <= 1:
        return BlockingInstance(ps, PointSet(np.empty((0, 2))), k, math.inf, math.inf)
    delta = vertical_spacing(ps)
    eps = delta / 2.0
    order = np.argsort(ps.xy[:, 1], kind="stable")[:-1]
    lift = eps * (1.0 + np.arange(k + 1) / (k + 2))
    shift = delta * 1e-6 * (np.arange(k + 1) + 1.0) if k else np.zeros(1)
    for attempt in range(MAX_JITTER_RETRIES + 1):
        if attempt:
            rng = rng if rng is not None else np.random.Generator(np.random.Philox(attempt))
            shift = delta * 1e-6 * rng.uniform(0.5, 2.0, k + 1)
        base = ps.xy[order]
        copies = np.empty((len(order), k + 1, 2))
        copies[:, :, 0] = base[:, None, 0] + shift[None, :]
        copies[:, :, 1] = base[:, None, 1] + lift[None, :]
        blockers = copies.reshape(-1, 2)
        if validate_general_position(np.vstack([ps.xy, blockers])).ok:
            return BlockingInstance(ps, PointSet(blockers), k, delta, eps)
    raise InvalidPointSet("could not place blockers in general position")


def blocking_construction(points: PointSet, k: int, rng: np.random.Generator | None = None) -> PointSet:
    return blocking_instance(points, k, rng).blockers


def lower_bounds(n: int, k: int) -> tuple[int, int | None]:
    mst = math.ceil((k + 1) * (n - 1) / 3) if n > 0 else 0
    matching = math.ceil((n - 1) / 2) if k == 0 and n > 0 else None
    return mst, matching


def lower_bound_report(base: PointSet, blockers: PointSet, k: int) -> LowerBoundReport:
    base, blockers = PointSet.of(base), PointSet.of(blockers)
    if not blocks(base, blockers, k):
        raise NotABlocker("the supplied points do not block the graph")
    mst, matching = lower_bounds(base.n, k)
    report = LowerBoundReport(base.n, k, blockers.n, mst, matching)
    if not report.respects_bound:
        raise AssertionError(f"blocker of size {report.size} is below the proven bound {report.bound}")
    return report


def candidate_grid(points: PointSet, size: int, margin: float = 0.1, skew: float = 0.01) -> np.ndarray:
    """A ``size x size`` grid around ``points``, sheared off the 0/60/120 lines."""
    ps = PointSet.of(points)
    lo = ps.xy.min(axis=0) - margin
    hi = ps.xy.max(axis=0) + margin
    gx, gy = np.meshgrid(np.linspace(lo[0], hi[0], size), np.linspace(lo[1], hi[1], size), indexing="ij")
    gx = gx + skew * np.sqrt(np.arange(size * size).reshape(size, size) + 2.0)
    gy = gy + skew * np.sqrt(2.0 * np.arange(size * size).reshape(size, size) + 3.0)
    return np.stack([gx.ravel(), gy.ravel()], axis=1)


def minimum_blocker_search(
    points: PointSet, candidates: Sequence[Sequence[float]], k: int, max_size: int
) -> PointSet | None:
    """Smallest subset of ``candidates`` (up to ``max_size``) that blocks.

    Subsets whose union with ``points`` is not in general position are
    skipped.
    """
    ps = PointSet.of(points)
    cand = np.asarray(candidates, dtype=float).reshape(-1, 2)
    usable = [i for i in range(len(cand)) if validate_general_position(np.vstack([ps.xy, cand[i : i + 1]])).ok]
    for size in range(0, max_size + 1):
        for combo in itertools.combinations(usable, size):
            extra = cand[list(combo)].reshape(-1, 2)
            if size > 1 and not validate_general_position(np.vstack([ps.xy, extra])).ok:
                continue
            if blocks(ps, PointSet(extra), k):
                return PointSet(extra)
    return None
