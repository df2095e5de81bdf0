"""File formats and SVG drawing.

Floats are written with 17 significant digits so every file round-trips
exactly, and all output is produced by hand-rolled formatting rather than
``json.dumps`` so the bytes never depend on the interpreter's float repr.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import ParseError
from .geometry import PointSet, smallest_down_triangle
from .graphs import GeoGraph
from .scenarios import WitnessSpec


def fmt(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    s = format(float(x), ".17g")
    # keep a float marker so integers stay distinguishable on re-read
    if "." not in s and "e" not in s:
        s += ".0"
    return s


def dumps(obj: Any, indent: int = 0, step: int = 2) -> str:
    """Deterministic JSON.  Lists of scalars stay on one line."""
    pad = " " * (indent + step)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent + step, step)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + " " * indent + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(dumps(v) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent + step, step) for v in seq) + "\n" + " " * indent + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text if text.endswith("\n") else text + "\n")


def load_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _points_from(data: Any, where: str) -> PointSet:
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError):
        raise ParseError(f"{where}: points must be a list of [x, y] pairs") from None
    if arr.size == 0:
        return PointSet(np.empty((0, 2)))
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ParseError(f"{where}: points must be a list of [x, y] pairs")
    return PointSet(arr)


# -- point sets -----------------------------------------------------------------


def points_to_json(points: PointSet) -> dict:
    return {"points": [[float(x), float(y)] for x, y in PointSet.of(points).xy]}


def write_points(path: str | Path, points: PointSet) -> None:
    write_text(path, dumps(points_to_json(points)))


def read_points(path: str | Path) -> PointSet:
    data = load_json(path)
    if not isinstance(data, dict) or "points" not in data:
        raise ParseError(f"{path}: expected an object with a 'points' list")
    return _points_from(data["points"], str(path))


# -- graphs -----------------------------------------------------------------------


def graph_to_json(graph: GeoGraph) -> dict:
    out: dict[str, Any] = {"n": graph.n, "k": graph.k}
    if graph.points is not None:
        out["points"] = points_to_json(graph.points)["points"]
    out["edges"] = [[i, j, w] for i, j, w in graph.edges]
    return out


def write_graph(path: str | Path, graph: GeoGraph) -> None:
    write_text(path, dumps(graph_to_json(graph)))


def read_graph(path: str | Path) -> GeoGraph:
    data = load_json(path)
    try:
        points = _points_from(data["points"], str(path)) if "points" in data else None
        edges = [(int(i), int(j), float(w)) for i, j, w in data["edges"]]
        return GeoGraph(int(data["n"]), edges, points, data.get("k"))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{path}: malformed graph file ({exc})") from None


# -- blockers -----------------------------------------------------------------------


def blocker_to_json(base: PointSet, k: int, blockers: PointSet) -> dict:
    return {
        "base": points_to_json(base),
        "k": int(k),
        "blockers": points_to_json(blockers)["points"],
    }


def read_blocker(path: str | Path) -> tuple[PointSet, int, PointSet]:
    data = load_json(path)
    try:
        return (_points_from(data["base"]["points"], str(path)), int(data["k"]),
                _points_from(data["blockers"], str(path)))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{path}: malformed blocker file ({exc})") from None


# -- witnesses ----------------------------------------------------------------------


def write_witness(path: str | Path, spec: WitnessSpec) -> None:
    write_text(path, dumps(spec.to_json()))


def read_witness(path: str | Path) -> WitnessSpec:
    data = load_json(path)
    try:
        return WitnessSpec.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{path}: malformed witness file ({exc})") from None


# -- SVG ------------------------------------------------------------------------------

ROLE_COLORS = {
    "a": "#d62728",
    "b": "#d62728",
    "U": "#1f77b4",
    "R": "#2ca02c",
    "A": "#1f77b4",
    "K": "#d62728",
    "B": "#2ca02c",
}
DEFAULT_COLOR = "#333333"


def _n(x: float) -> str:
    return f"{x:.6f}"


def render_svg(
    points: PointSet,
    edges: Iterable[Sequence[int]] = (),
    *,
    old_edges: Iterable[Sequence[int]] = (),
    roles: dict[str, Any] | None = None,
    triangles: Iterable[tuple[int, int]] = (),
    width: int = 600,
) -> str:
    """Draw points and edges; the drawing box is the data box plus 5%.

    Edges listed in ``old_edges`` are drawn light, the rest dark.
    ``triangles`` lists point pairs whose t(p, q) is outlined.
    """
    ps = PointSet.of(points)
    corner_sets = [smallest_down_triangle(ps[i], ps[j]).corners for i, j in triangles]
    pool = [ps.xy] + [np.asarray(c, dtype=float) for c in corner_sets]
    allxy = np.vstack(pool) if ps.n or corner_sets else np.zeros((1, 2))
    lo, hi = allxy.min(axis=0), allxy.max(axis=0)
    span = float((hi - lo).max()) or 1.0
    lo, hi = lo - 0.05 * span, hi + 0.05 * span
    w, h = hi - lo
    height = max(1, round(width * h / w))
    r = 0.008 * max(w, h)
    stroke = 0.003 * max(w, h)

    def y(v: float) -> float:
        # flip so that +y points up on screen
        return lo[1] + hi[1] - v

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{_n(lo[0])} {_n(y(hi[1]))} {_n(w)} {_n(h)}">',
    ]
    for corners in corner_sets:
        pts = " ".join(f"{_n(cx)},{_n(y(cy))}" for cx, cy in corners)
        out.append(f'  <polygon points="{pts}" fill="#ff7f0e" fill-opacity="0.12" stroke="#ff7f0e" '
                   f'stroke-width="{_n(stroke)}"/>')
    old = {(min(i, j), max(i, j)) for i, j, *_ in old_edges}
    for e in sorted({(min(i, j), max(i, j)) for i, j, *_ in edges}):
        i, j = e
        colour, sw = ("#bbbbbb", stroke) if e in old else ("#222222", 1.6 * stroke)
        out.append(f'  <line x1="{_n(ps.xy[i, 0])}" y1="{_n(y(ps.xy[i, 1]))}" x2="{_n(ps.xy[j, 0])}" '
                   f'y2="{_n(y(ps.xy[j, 1]))}" stroke="{colour}" stroke-width="{_n(sw)}"/>')
    colour_of = {}
    for name, idx in (roles or {}).items():
        for i in [idx] if isinstance(idx, int) else idx:
            colour_of[int(i)] = ROLE_COLORS.get(name, DEFAULT_COLOR)
    for i, (px, py) in enumerate(ps.xy):
        out.append(f'  <circle cx="{_n(px)}" cy="{_n(y(py))}" r="{_n(r)}" fill="{colour_of.get(i, DEFAULT_COLOR)}"/>')
    for name in ("a", "b"):
        if roles and name in roles:
            i = int(roles[name])
            out.append(f'  <text x="{_n(ps.xy[i, 0] + 1.5 * r)}" y="{_n(y(ps.xy[i, 1]) - 1.5 * r)}" '
                       f'font-size="{_n(4 * r)}" font-family="sans-serif">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_graph_svg(graph: GeoGraph, old_edges: Iterable[Sequence[int]] = (),
                     triangles: Iterable[tuple[int, int]] = ()) -> str:
    if graph.points is None:
        raise ParseError("graph has no coordinates to draw")
    return render_svg(graph.points, [(i, j) for i, j, _ in graph.edges], old_edges=old_edges, triangles=triangles)


def render_witness_svg(spec: WitnessSpec, edges: Iterable[Sequence[int]] = ()) -> str:
    roles = spec.roles
    tris = [(int(roles["a"]), int(roles["b"]))] if "a" in roles and "b" in roles else []
    return render_svg(spec.points, edges, roles=roles, triangles=tris)
