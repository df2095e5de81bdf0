"""Triangular-distance geometry in support-value coordinates.

A downward equilateral triangle is stored as the three support values
``(t0, t1, t2)`` along the outward unit normals of its sides::

    n0 = (0, 1)              top side
    n1 = (-sqrt(3)/2, -1/2)  lower-left side
    n2 = ( sqrt(3)/2, -1/2)  lower-right side

The triangle is ``{x : x . n_i <= t_i}``.  Since ``n0 + n1 + n2 = 0`` the
support values of a single point sum to zero, and for a triangle the sum
``sigma = t0 + t1 + t2`` is its height.  Side length is ``2 sigma / sqrt(3)``
and area is ``sigma**2 / sqrt(3)``.

Cones around a point are numbered 1..6 counter-clockwise with cone 1 the
open sector of directions in (0, 60) degrees.  Even cones (2, 4, 6) are the
sectors in which the smallest downward triangle has its corner at the apex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DegenerateDirection, InvalidPointSet

SQRT3 = math.sqrt(3.0)
NORMALS = np.array([[0.0, 1.0], [-SQRT3 / 2, -0.5], [SQRT3 / 2, -0.5]])

# absolute tolerance on support-value differences for general position
GP_TOL = 1e-9
# sizes closer than this are treated as ties
TIE_TOL = 1e-12

# support coordinate k is constant along this direction (degrees)
ALIGNED_DIRECTION = {0: 0, 1: 120, 2: 60}


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class SupportTriple:
    t0: float
    t1: float
    t2: float

    @property
    def sigma(self) -> float:
        return self.t0 + self.t1 + self.t2

    def as_array(self) -> np.ndarray:
        return np.array([self.t0, self.t1, self.t2])


@dataclass(frozen=True)
class DownTriangle:
    """A downward homothet of the reference triangle."""

    support: SupportTriple

    @property
    def sigma(self) -> float:
        return self.support.sigma

    @property
    def side_length(self) -> float:
        return 2.0 * self.sigma / SQRT3

    @property
    def area(self) -> float:
        return self.sigma**2 / SQRT3

    @property
    def corners(self) -> tuple[Point, Point, Point]:
        """Bottom, top-left and top-right corners."""
        return triangle_corners(self.support.as_array())

    def contains_triangle(self, other: DownTriangle) -> bool:
        a, b = self.support, other.support
        return other.support.t0 <= a.t0 and b.t1 <= a.t1 and b.t2 <= a.t2


@dataclass(frozen=True)
class Hexagon:
    """Regular hexagon centred at ``center`` with ``through`` on its boundary.

    Sides are parallel to the 0, 60 and 120 degree lines, so the hexagon is
    the ball of the norm ``max_i |u_i(v)|``.
    """

    center: Point
    through: Point

    @property
    def radius(self) -> float:
        return hex_norm(np.subtract(self.through, self.center))


@dataclass(frozen=True)
class GeneralPositionReport:
    ok: bool
    # (i, j, direction in degrees) for every aligned pair, i < j
    violations: list[tuple[int, int, int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class PointSet:
    """An ordered planar point set backed by an ``(n, 2)`` float array."""

    xy: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.xy, dtype=float).reshape(-1, 2)
        if not np.all(np.isfinite(arr)):
            raise InvalidPointSet("coordinates must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "xy", arr)

    @classmethod
    def of(cls, points: PointSet | Iterable[Sequence[float]] | np.ndarray) -> PointSet:
        if isinstance(points, PointSet):
            return points
        return cls(np.asarray(points if isinstance(points, np.ndarray) else list(points), dtype=float))

    def __len__(self) -> int:
        return len(self.xy)

    def __getitem__(self, i: int) -> Point:
        x, y = self.xy[i]
        return Point(float(x), float(y))

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    @property
    def n(self) -> int:
        return len(self.xy)

    @cached_property
    def support(self) -> np.ndarray:
        """Support values of every point, shape ``(n, 3)``."""
        s = support_array(self.xy)
        s.setflags(write=False)
        return s

    def union(self, other: PointSet) -> PointSet:
        return PointSet(np.vstack([self.xy, PointSet.of(other).xy]))

    def validate(self) -> PointSet:
        report = validate_general_position(self)
        if not report.ok:
            i, j, d = report.violations[0]
            raise InvalidPointSet(
                f"{len(report.violations)} aligned pair(s); first: points {i} and {j} along {d} degrees"
            )
        return self


def support_array(xy: np.ndarray) -> np.ndarray:
    return np.asarray(xy, dtype=float).reshape(-1, 2) @ NORMALS.T


def support_values(p: Sequence[float]) -> SupportTriple:
    x, y = float(p[0]), float(p[1])
    return SupportTriple(y, -SQRT3 / 2 * x - 0.5 * y, SQRT3 / 2 * x - 0.5 * y)


def hex_norm(v: Sequence[float]) -> float:
    x, y = float(v[0]), float(v[1])
    return max(abs(y), abs(-SQRT3 / 2 * x - 0.5 * y), abs(SQRT3 / 2 * x - 0.5 * y))


def triangle_corners(t: Sequence[float]) -> tuple[Point, Point, Point]:
    t0, t1, t2 = (float(v) for v in t)
    bottom = Point((t2 - t1) / SQRT3, -(t1 + t2))
    top_left = Point(-(2 * t1 + t0) / SQRT3, t0)
    top_right = Point((2 * t2 + t0) / SQRT3, t0)
    return bottom, top_left, top_right


def point_from_support(u0: float, u1: float, u2: float) -> Point:
    """Inverse of :func:`support_values` (``u2`` and ``u1`` fix x, ``u0`` fixes y)."""
    return Point((u2 - u1) / SQRT3, u0)


def _aligned_axis(p: Sequence[float], q: Sequence[float]) -> int | None:
    up, uq = support_values(p), support_values(q)
    for k, (a, b) in enumerate(zip((up.t0, up.t1, up.t2), (uq.t0, uq.t1, uq.t2))):
        if abs(a - b) <= GP_TOL:
            return k
    return None


def _check_pair(p: Sequence[float], q: Sequence[float]) -> None:
    k = _aligned_axis(p, q)
    if k is not None:
        raise DegenerateDirection(
            f"{tuple(p)} and {tuple(q)} are aligned along {ALIGNED_DIRECTION[k]} degrees"
        )


def cone_of(p: Sequence[float], q: Sequence[float]) -> int:
    """Index (1..6) of the cone with apex ``p`` that contains ``q``."""
    _check_pair(p, q)
    angle = math.degrees(math.atan2(q[1] - p[1], q[0] - p[0])) % 360.0
    return int(angle // 60.0) + 1


def smallest_down_triangle(p: Sequence[float], q: Sequence[float]) -> DownTriangle:
    if p[0] == q[0] and p[1] == q[1]:
        raise ValueError("t(p, q) is undefined for p == q")
    up, uq = support_values(p), support_values(q)
    return DownTriangle(SupportTriple(max(up.t0, uq.t0), max(up.t1, uq.t1), max(up.t2, uq.t2)))


def td_distance(p: Sequence[float], q: Sequence[float]) -> float:
    """Size of t(p, q); symmetric in its arguments."""
    _check_pair(p, q)
    return smallest_down_triangle(p, q).sigma


def up_triangle_size(p: Sequence[float], q: Sequence[float]) -> float:
    """Size of the smallest upward triangle through p and q."""
    if p[0] == q[0] and p[1] == q[1]:
        raise ValueError("t'(p, q) is undefined for p == q")
    up, uq = support_values(p), support_values(q)
    return max(-up.t0, -uq.t0) + max(-up.t1, -uq.t1) + max(-up.t2, -uq.t2)


def interior_contains(tri: DownTriangle, r: Sequence[float]) -> bool:
    u = support_values(r)
    t = tri.support
    return u.t0 < t.t0 and u.t1 < t.t1 and u.t2 < t.t2


def hexagon_contains(hexagon: Hexagon, r: Sequence[float]) -> bool:
    return hex_norm(np.subtract(r, hexagon.center)) < hexagon.radius


def validate_general_position(points: PointSet | Iterable[Sequence[float]]) -> GeneralPositionReport:
    """Find every pair sharing a support value (within ``GP_TOL``).

    Sorting each support coordinate keeps this near-linear; only runs of
    near-equal values are expanded into pairs.
    """
    ps = PointSet.of(points)
    if ps.n < 2:
        return GeneralPositionReport(True)
    violations = set()
    for k in range(3):
        col = ps.support[:, k]
        order = np.argsort(col, kind="stable")
        vals = col[order]
        close = np.flatnonzero(np.diff(vals) <= GP_TOL)
        for start in close:
            # walk forward while still within tolerance of order[start]
            j = start + 1
            while j < len(vals) and vals[j] - vals[start] <= GP_TOL:
                a, b = sorted((int(order[start]), int(order[j])))
                violations.add((a, b, ALIGNED_DIRECTION[k]))
                j += 1
    return GeneralPositionReport(not violations, sorted(violations))


def pairwise_sigma(support: np.ndarray) -> np.ndarray:
    """``sigma(t(p_i, p_j))`` for all pairs, shape ``(n, n)``."""
    return np.maximum(support[:, None, :], support[None, :, :]).sum(axis=2)


def triangle_area(sigma: float | np.ndarray) -> float | np.ndarray:
    return np.square(sigma) / SQRT3
