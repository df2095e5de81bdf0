"""Connectivity, Hamiltonicity and bottleneck structures."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Literal

from .errors import OddN, SizeLimit
from .geometry import TIE_TOL, PointSet
from .graphs import GeoGraph, build_ktd_cones, complete_graph
from .matching import adjacency_masks, max_matching

Kind = Literal["matching", "hamiltonian", "biconnected"]
KINDS: tuple[str, ...] = ("matching", "hamiltonian", "biconnected")

HAMILTONIAN_CAP = 18
BOTTLENECK_CAP = 60


@dataclass(frozen=True)
class BottleneckResult:
    kind: str
    lam: float
    edges: tuple[tuple[int, int], ...]


def _local_connectivity(n: int, adj: list[set[int]], s: int, t: int, cutoff: int) -> int:
    """Vertex-disjoint s-t paths via unit-capacity flow on the split graph.

    Vertex v becomes ``2v`` (in) -> ``2v + 1`` (out).  Stops at ``cutoff``.
    """
    head: list[int] = []
    cap: list[int] = []
    out: list[list[int]] = [[] for _ in range(2 * n)]

    def arc(a: int, b: int, c: int) -> None:
        out[a].append(len(head))
        head.append(b)
        cap.append(c)
        out[b].append(len(head))
        head.append(a)
        cap.append(0)

    big = n
    for v in range(n):
        arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
    for v in range(n):
        for w in adj[v]:
            arc(2 * v + 1, 2 * w, 1)
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while flow < cutoff:
        prev = [-1] * (2 * n)
        prev[source] = -2
        queue = deque([source])
        while queue and prev[sink] == -1:
            a = queue.popleft()
            for e in out[a]:
                b = head[e]
                if cap[e] > 0 and prev[b] == -1:
                    prev[b] = e
                    queue.append(b)
        if prev[sink] == -1:
            break
        b = sink
        while b != source:
            e = prev[b]
            cap[e] -= 1
            cap[e ^ 1] += 1
            b = head[e ^ 1]
        flow += 1
    return flow


def vertex_connectivity(graph: GeoGraph) -> int:
    """Minimum number of vertices whose removal disconnects the graph.

    Even's scheme: only sources among the first ``kappa + 1`` vertices need
    to be tried, where ``kappa`` is the best bound found so far.
    """
    n = graph.n
    if n < 2:
        raise ValueError("vertex connectivity needs at least two vertices")
    adj = graph.adjacency
    best = min(n - 1, min(len(a) for a in adj))
    i = 0
    while i <= best and i < n:
        for j in range(i + 1, n):
            if j in adj[i]:
                continue
            best = min(best, _local_connectivity(n, adj, i, j, best))
        i += 1
    return best


def is_connected(graph: GeoGraph) -> bool:
    if graph.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in graph.adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == graph.n


def articulation_points(graph: GeoGraph) -> set[int]:
    n = graph.n
    adj = [sorted(a) for a in graph.adjacency]
    disc = [-1] * n
    low = [0] * n
    cuts: set[int] = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        children = 0
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        children += 1
                    stack.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if parent != root and low[v] >= disc[parent]:
                    cuts.add(parent)
        if children > 1:
            cuts.add(root)
    return cuts


def is_biconnected(graph: GeoGraph) -> bool:
    return graph.n >= 3 and is_connected(graph) and not articulation_points(graph)


def hamiltonian_cycle(graph: GeoGraph) -> list[int] | None:
    """A Hamiltonian cycle as a vertex list, or ``None``.

    Held-Karp over subsets containing vertex 0; ``ends[mask]`` is the bitset
    of vertices at which a path from 0 covering ``mask`` can stop.
    """
    n = graph.n
    if n > HAMILTONIAN_CAP:
        raise SizeLimit(f"Hamiltonicity DP is capped at {HAMILTONIAN_CAP} vertices, got {n}")
    if n < 3:
        return None
    adj = adjacency_masks(graph)
    ends = [0] * (1 << n)
    ends[1] = 1
    for mask in range(1, 1 << n, 2):
        cur = ends[mask]
        while cur:
            b = cur & -cur
            cur ^= b
            nxt = adj[b.bit_length() - 1] & ~mask
            while nxt:
                c = nxt & -nxt
                nxt ^= c
                ends[mask | c] |= c
    full = (1 << n) - 1
    last = ends[full] & adj[0] & ~1
    if not last:
        return None
    # walk backwards through the table
    v = (last & -last).bit_length() - 1
    mask = full
    path = [v]
    while mask != 1:
        prev_mask = mask ^ (1 << v)
        cand = ends[prev_mask] & adj[v]
        u = (cand & -cand).bit_length() - 1
        path.append(u)
        mask, v = prev_mask, u
    return path[::-1]


def is_hamiltonian(graph: GeoGraph) -> bool:
    return hamiltonian_cycle(graph) is not None


def _realize(graph: GeoGraph, kind: str) -> tuple[tuple[int, int], ...] | None:
    if kind == "matching":
        rep = max_matching(graph, "blossom")
        return rep.edges if rep.is_perfect else None
    if kind == "hamiltonian":
        cyc = hamiltonian_cycle(graph)
        if cyc is None:
            return None
        return tuple(sorted((min(a, b), max(a, b)) for a, b in zip(cyc, cyc[1:] + cyc[:1])))
    if kind == "biconnected":
        return tuple((i, j) for i, j, _ in graph.edges) if is_biconnected(graph) else None
    raise ValueError(f"unknown structure kind {kind!r}")


def feasible(graph: GeoGraph, kind: str) -> bool:
    """Does ``graph`` contain a spanning structure of the given kind?"""
    return _realize(graph, kind) is not None


def _check_size(n: int, kind: str) -> None:
    if kind == "matching" and n % 2:
        raise OddN(f"perfect matching needs an even number of points, got {n}")
    cap = HAMILTONIAN_CAP if kind == "hamiltonian" else BOTTLENECK_CAP
    if n > cap:
        raise SizeLimit(f"bottleneck {kind} is capped at {cap} points, got {n}")
    if kind in ("hamiltonian", "biconnected") and n < 3:
        raise ValueError(f"a {kind} structure needs at least three points")


def distinct_weights(graph: GeoGraph) -> list[float]:
    """Sorted edge weights with values closer than TIE_TOL merged."""
    out: list[float] = []
    for w in sorted(w for _, _, w in graph.edges):
        if out and w - out[-1] <= TIE_TOL * max(1.0, abs(out[-1])):
            out[-1] = w
        else:
            out.append(w)
    return out


def bottleneck_in_graph(graph: GeoGraph, kind: str) -> BottleneckResult | None:
    """Smallest threshold at which ``graph`` contains the structure."""
    levels = distinct_weights(graph)
    if not levels or not feasible(graph, kind):
        return None
    lo, hi = 0, len(levels) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(graph.threshold(levels[mid]), kind):
            hi = mid
        else:
            lo = mid + 1
    lam = levels[lo]
    return BottleneckResult(kind, lam, _realize(graph.threshold(lam), kind))


def bottleneck_value(points: PointSet, kind: str) -> BottleneckResult:
    """Bottleneck structure of the complete TD-weighted graph on ``points``."""
    ps = PointSet.of(points)
    _check_size(ps.n, kind)
    result = bottleneck_in_graph(complete_graph(ps), kind)
    assert result is not None
    return result


def bottleneck_within_ktd(
    points: PointSet,
    kind: str,
    k: int,
    builder: Callable[[PointSet, int], GeoGraph] = build_ktd_cones,
) -> bool:
    """Is the optimal bottleneck value attainable using only k-TD edges?"""
    ps = PointSet.of(points)
    lam = bottleneck_value(ps, kind).lam
    return feasible(builder(ps, k).threshold(lam), kind)
