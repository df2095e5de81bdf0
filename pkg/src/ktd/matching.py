"""Maximum cardinality matching and the Tutte-Berge deficiency.

Two matching routes are kept deliberately separate: an exhaustive bitmask
recursion for small graphs, and Edmonds' blossom algorithm.  The first is
simple enough to serve as the oracle for the second.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .errors import SizeLimit
from .graphs import GeoGraph

EXACT_CAP = 24
DEFICIENCY_CAP = 20


@dataclass(frozen=True)
class MatchingReport:
    n: int
    edges: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def is_perfect(self) -> bool:
        return self.n % 2 == 0 and 2 * self.size == self.n


@dataclass(frozen=True)
class DeficiencyReport:
    n: int
    witness: tuple[int, ...]
    odd_components: int
    deficiency: int

    @property
    def matching_size(self) -> int:
        return (self.n - self.deficiency) // 2


def adjacency_masks(graph: GeoGraph) -> list[int]:
    masks = [0] * graph.n
    for i, j, _ in graph.edges:
        masks[i] |= 1 << j
        masks[j] |= 1 << i
    return masks


def max_matching(graph: GeoGraph, method: str = "auto") -> MatchingReport:
    """Maximum cardinality matching.

    ``method`` is ``"exact"`` (bitmask recursion, n <= 24), ``"blossom"``
    or ``"auto"`` (exact up to 12 vertices, blossom above).
    """
    if method == "auto":
        method = "exact" if graph.n <= 12 else "blossom"
    if method == "exact":
        pairs = _exact_matching(graph)
    elif method == "blossom":
        pairs = _blossom_matching(graph)
    else:
        raise ValueError(f"unknown method {method!r}")
    return MatchingReport(graph.n, tuple(sorted(pairs)))


def has_perfect_matching(graph: GeoGraph) -> bool:
    return graph.n % 2 == 0 and max_matching(graph, "blossom").is_perfect


def _exact_matching(graph: GeoGraph) -> list[tuple[int, int]]:
    n = graph.n
    if n > EXACT_CAP:
        raise SizeLimit(f"exact matching is capped at {EXACT_CAP} vertices, got {n}")
    adj = adjacency_masks(graph)
    memo: dict[int, int] = {0: 0}

    def best(mask: int) -> int:
        if mask in memo:
            return memo[mask]
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        value = best(rest)
        cand = adj[v] & rest
        while cand:
            b = cand & -cand
            cand ^= b
            value = max(value, 1 + best(rest ^ b))
        memo[mask] = value
        return value

    mask = (1 << n) - 1
    pairs = []
    while mask:
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        target = best(mask)
        if best(rest) == target:
            mask = rest
            continue
        cand = adj[v] & rest
        while cand:
            b = cand & -cand
            cand ^= b
            if 1 + best(rest ^ b) == target:
                pairs.append((v, b.bit_length() - 1))
                mask = rest ^ b
                break
    return pairs


def _blossom_matching(graph: GeoGraph) -> list[tuple[int, int]]:
    """Edmonds' algorithm, O(n^3)."""
    n = graph.n
    adj = [sorted(a) for a in graph.adjacency]
    match = [-1] * n
    for v in range(n):
        if match[v] == -1:
            for u in adj[v]:
                if match[u] == -1:
                    match[u], match[v] = v, u
                    break

    def find_augmenting(root: int) -> tuple[int, list[int]]:
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[match[b]]

        def mark(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark(v, cur, to, blossom)
                    mark(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to, parent
                    used[match[to]] = True
                    queue.append(match[to])
        return -1, parent

    for root in range(n):
        if match[root] != -1:
            continue
        end, parent = find_augmenting(root)
        v = end
        while v != -1:
            pv = parent[v]
            nxt = match[pv]
            match[v], match[pv] = pv, v
            v = nxt
    return [(v, match[v]) for v in range(n) if match[v] > v]


def perfect_matchings(graph: GeoGraph) -> Iterator[list[tuple[int, int]]]:
    """Enumerate every perfect matching (exponential; small graphs only)."""
    adj = adjacency_masks(graph)

    def rec(mask: int, acc: list[tuple[int, int]]):
        if not mask:
            yield list(acc)
            return
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        cand = adj[v] & rest
        while cand:
            b = cand & -cand
            cand ^= b
            acc.append((v, b.bit_length() - 1))
            yield from rec(rest ^ b, acc)
            acc.pop()

    if graph.n % 2 == 0:
        yield from rec((1 << graph.n) - 1, [])


def odd_components(adj: list[int], remaining: int) -> int:
    odd = 0
    while remaining:
        comp = frontier = remaining & -remaining
        while frontier:
            b = frontier & -frontier
            frontier ^= b
            grow = adj[b.bit_length() - 1] & remaining & ~comp
            comp |= grow
            frontier |= grow
        remaining &= ~comp
        odd += comp.bit_count() & 1
    return odd


def component_count(adj: list[int], remaining: int) -> int:
    count = 0
    while remaining:
        comp = frontier = remaining & -remaining
        while frontier:
            b = frontier & -frontier
            frontier ^= b
            grow = adj[b.bit_length() - 1] & remaining & ~comp
            comp |= grow
            frontier |= grow
        remaining &= ~comp
        count += 1
    return count


def tutte_berge_deficiency(graph: GeoGraph) -> DeficiencyReport:
    """Exhaustive ``max_K o(G - K) - |K|`` over all vertex subsets K."""
    n = graph.n
    if n > DEFICIENCY_CAP:
        raise SizeLimit(f"exhaustive deficiency is capped at {DEFICIENCY_CAP} vertices, got {n}")
    adj = adjacency_masks(graph)
    full = (1 << n) - 1
    best = (-1, 0, 0)
    for k_mask in range(1 << n):
        odd = odd_components(adj, full & ~k_mask)
        value = odd - k_mask.bit_count()
        if value > best[0]:
            best = (value, k_mask, odd)
    value, k_mask, odd = best
    witness = tuple(i for i in range(n) if k_mask >> i & 1)
    return DeficiencyReport(n, witness, odd, value)
