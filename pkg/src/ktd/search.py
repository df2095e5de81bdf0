"""Constraint-guided placement of counterexample point sets.

Every constraint is a bound on a TD distance ``d(p, q) = max_i |u_i(p - q)|``.
Upper bounds are convex (six linear inequalities).  A lower bound is made
linear by fixing the support direction and sign that currently realize the
distance, which is a restriction of the true constraint, so every LP
solution is feasible for the real problem.  Re-linearizing at the new point
and solving again can only increase the common slack ``m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from .geometry import NORMALS, SQRT3, hex_norm, validate_general_position


@dataclass
class ConstraintSystem:
    n: int
    # (i, j, c): d(p_i, p_j) <= c
    upper: list[tuple[int, int, float]] = field(default_factory=list)
    # (i, j, c): d(p_i, p_j) == c
    equal: list[tuple[int, int, float]] = field(default_factory=list)
    # (i, j, c): d(p_i, p_j) >= c + m
    lower: list[tuple[int, int, float]] = field(default_factory=list)
    # (i, t): u(p_i) <= t - m componentwise
    inside: list[tuple[int, tuple[float, float, float]]] = field(default_factory=list)
    fixed: dict[int, tuple[float, float]] = field(default_factory=dict)
    # (i, y, xlo, xhi): p_i on the segment y = const, x within [xlo + m, xhi - m]
    on_horizontal: list[tuple[int, float, float, float]] = field(default_factory=list)
    # require upper bounds to hold with slack m as well
    strict_upper: bool = False

    def slack(self, xy: np.ndarray) -> float:
        """Smallest slack over all strict constraints (negative = violated)."""
        worst = np.inf
        for i, j, c in self.upper:
            gap = c - hex_norm(xy[i] - xy[j])
            if gap < -1e-12:
                return -np.inf
            if self.strict_upper:
                worst = min(worst, gap)
        for i, j, c in self.equal:
            if abs(hex_norm(xy[i] - xy[j]) - c) > 1e-9:
                return -np.inf
        for i, j, c in self.lower:
            worst = min(worst, hex_norm(xy[i] - xy[j]) - c)
        for i, t in self.inside:
            worst = min(worst, float((np.asarray(t) - NORMALS @ xy[i]).min()))
        for i, y, lo, hi in self.on_horizontal:
            worst = min(worst, xy[i, 0] - lo, hi - xy[i, 0])
        return float(worst)


def _argmax_dir(v: np.ndarray) -> tuple[int, float]:
    s = NORMALS @ v
    i = int(np.argmax(np.abs(s)))
    return i, float(np.sign(s[i]) or 1.0)


def _solve(system: ConstraintSystem, xy: np.ndarray, box: float, m_cap: float) -> tuple[np.ndarray, float] | None:
    n = system.n
    nv = 2 * n + 1
    A, b = [], []
    Aeq, beq = [], []

    def diff_row(i: int, j: int, normal: np.ndarray, sign: float) -> np.ndarray:
        row = np.zeros(nv)
        row[2 * i : 2 * i + 2] += sign * normal
        row[2 * j : 2 * j + 2] -= sign * normal
        return row

    for i, j, c in system.upper:
        for k in range(3):
            for s in (1.0, -1.0):
                row = diff_row(i, j, NORMALS[k], s)
                if system.strict_upper:
                    row[-1] = 1.0
                A.append(row)
                b.append(c)
    for i, j, c in system.equal:
        k, s = _argmax_dir(xy[i] - xy[j])
        Aeq.append(diff_row(i, j, NORMALS[k], s))
        beq.append(c)
        for kk in range(3):
            for ss in (1.0, -1.0):
                A.append(diff_row(i, j, NORMALS[kk], ss))
                b.append(c)
    for i, j, c in system.lower:
        k, s = _argmax_dir(xy[i] - xy[j])
        row = -diff_row(i, j, NORMALS[k], s)
        row[-1] = 1.0
        A.append(row)
        b.append(-c)
    for i, t in system.inside:
        for k in range(3):
            row = np.zeros(nv)
            row[2 * i : 2 * i + 2] = NORMALS[k]
            row[-1] = 1.0
            A.append(row)
            b.append(t[k])
    bounds = [(-box, box)] * (2 * n) + [(None, m_cap)]
    for i, (x, y) in system.fixed.items():
        bounds[2 * i] = (x, x)
        bounds[2 * i + 1] = (y, y)
    for i, y, lo, hi in system.on_horizontal:
        bounds[2 * i + 1] = (y, y)
        for sign, edge in ((1.0, lo), (-1.0, -hi)):
            row = np.zeros(nv)
            row[2 * i] = -sign
            row[-1] = 1.0
            A.append(row)
            b.append(-edge)
    cost = np.zeros(nv)
    cost[-1] = -1.0
    res = linprog(
        cost,
        A_ub=np.array(A) if A else None,
        b_ub=np.array(b) if b else None,
        A_eq=np.array(Aeq) if Aeq else None,
        b_eq=np.array(beq) if beq else None,
        bounds=bounds,
        method="highs",
    )
    if res.status != 0:
        return None
    return res.x[:-1].reshape(n, 2), float(res.x[-1])


def improve(system: ConstraintSystem, xy: np.ndarray, box: float = 4.0, m_cap: float = 0.2, rounds: int = 40):
    """Sequential LP from ``xy``; returns the best layout and its margin."""
    best_xy, best_m = xy.copy(), -np.inf
    for _ in range(rounds):
        out = _solve(system, best_xy, box, m_cap)
        if out is None:
            break
        new_xy, m = out
        if m <= best_m + 1e-9:
            break
        best_xy, best_m = new_xy, m
    return best_xy, best_m


def jitter_to_general_position(
    system: ConstraintSystem, xy: np.ndarray, rng: np.random.Generator, scale: float, tries: int = 200
) -> np.ndarray | None:
    """Perturb free points off the 0/60/120 alignments, keeping every constraint."""
    movable = [i for i in range(system.n) if i not in system.fixed]
    for _ in range(tries):
        cand = xy.copy()
        cand[movable] += rng.uniform(-scale, scale, (len(movable), 2))
        for i, y, _, _ in system.on_horizontal:
            cand[i, 1] = y
        # restore equalities by scaling along the current offset
        for i, j, c in system.equal:
            v = cand[i] - cand[j]
            cand[i] = cand[j] + v * (c / hex_norm(v))
        if validate_general_position(cand).ok and system.slack(cand) > 0:
            return cand
    return None


def triangle_interior_sample(rng: np.random.Generator, count: int) -> np.ndarray:
    """Uniform points in the downward triangle with apex (0, 0) and top y = 1."""
    r1, r2 = rng.random(count), rng.random(count)
    flip = r1 + r2 > 1
    r1[flip], r2[flip] = 1 - r1[flip], 1 - r2[flip]
    left, right = np.array([-1 / SQRT3, 1.0]), np.array([1 / SQRT3, 1.0])
    return r1[:, None] * left + r2[:, None] * right
