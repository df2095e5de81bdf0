"""Seeded experiment campaigns, one per checked claim.

Each campaign draws ``trials`` independent instances from
``trial_seed(seed, trial)`` and records one row per trial.  A campaign only
calls the owning module's operation; nothing here re-derives a check.
"""

from __future__ import annotations

import csv
import io as _io
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .blocking import blocking_construction, blocks, lower_bound_report
from .combinatorics import bottleneck_in_graph, bottleneck_value, vertex_connectivity
from .errors import SizeLimit
from .geometry import PointSet
from .graphs import GeoGraph, build_ktd_cones
from .matching import max_matching
from .partition import (
    check_lemma_triangle3,
    check_mst_triangles_empty,
    max_overlap_depth,
    partition_mst,
    sample_exchange_configurations,
)
from .sampling import make_rng, random_pointset, trial_seed

Builder = Callable[[PointSet, int], GeoGraph]
COLUMNS = ("trial", "seed", "n", "k", "measured", "bound", "passed")
REL_TOL = 1e-12


@dataclass(frozen=True)
class Row:
    trial: int
    seed: int
    n: int
    k: int | None
    measured: float
    bound: float
    passed: bool


@dataclass(frozen=True)
class Campaign:
    name: str
    claim: str
    bound: str
    measured: str
    n_range: tuple[int, int]
    k_range: tuple[int, int] | None
    even: bool
    run: Callable[[np.random.Generator, int, int | None, Builder], tuple[float, float, bool]]


@dataclass
class RunConfig:
    campaign: str
    seed: int = 0
    trials: int = 20
    n_range: tuple[int, int] | None = None
    k_range: tuple[int, int] | None = None
    builder: Builder = field(default=build_ktd_cones, repr=False)


@dataclass(frozen=True)
class ExperimentReport:
    campaign: Campaign
    config: RunConfig
    rows: tuple[Row, ...]

    @property
    def passes(self) -> int:
        return sum(r.passed for r in self.rows)

    @property
    def pass_rate(self) -> float:
        return self.passes / len(self.rows) if self.rows else 1.0

    @property
    def ok(self) -> bool:
        return self.passes == len(self.rows)

    def to_csv(self) -> str:
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in self.rows:
            w.writerow([r.trial, r.seed, r.n, "" if r.k is None else r.k, _num(r.measured), _num(r.bound),
                        int(r.passed)])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "campaign": self.campaign.name,
            "seed": self.config.seed,
            "trials": len(self.rows),
            "passes": self.passes,
            "rows": [
                {"trial": r.trial, "seed": r.seed, "n": r.n, "k": r.k, "measured": r.measured,
                 "bound": r.bound, "passed": r.passed}
                for r in self.rows
            ],
        }

    def to_markdown(self) -> str:
        c = self.campaign
        lines = [
            f"# Campaign `{c.name}`",
            "",
            f"Claim checked: {c.claim}",
            "",
            f"- measured: {c.measured}",
            f"- bound: {c.bound}",
            f"- seed: {self.config.seed}",
            f"- trials: {len(self.rows)}",
            f"- passed: {self.passes}/{len(self.rows)} ({100 * self.pass_rate:.1f}%)",
        ]
        if self.rows:
            ns = [r.n for r in self.rows]
            lines.append(f"- n range seen: {min(ns)}..{max(ns)}")
        failed = [r.trial for r in self.rows if not r.passed]
        if failed:
            lines.append(f"- failing trials: {', '.join(map(str, failed[:20]))}")
        return "\n".join(lines) + "\n"


def _num(x: float) -> str:
    if isinstance(x, float) and not math.isfinite(x):
        return "inf" if x > 0 else "-inf"
    if float(x).is_integer():
        return str(int(x))
    return format(float(x), ".17g")


def _le(a: float, b: float) -> bool:
    return a <= b + REL_TOL * max(1.0, abs(b))


# -- campaign bodies ---------------------------------------------------------------
# Each returns (measured, bound, passed).


def _connectivity(rng, n, k, build):
    ps = random_pointset(n, rng)
    kappa = vertex_connectivity(build(ps, k))
    bound = min(k + 1, n - 1)
    return kappa, bound, kappa >= bound


def _bottleneck(kind: str):
    def run(rng, n, k, build):
        ps = random_pointset(n, rng)
        best = bottleneck_value(ps, kind).lam
        inside = bottleneck_in_graph(build(ps, k), kind)
        lam = inside.lam if inside is not None else math.inf
        return lam, best, _le(lam, best)

    return run


def _matching_size(bound_of: Callable[[int], int]):
    def run(rng, n, k, build):
        ps = random_pointset(n, rng)
        size = max_matching(build(ps, k)).size
        bound = bound_of(n)
        return size, bound, size >= bound

    return run


def _blocking_upper(rng, n, k, build):
    ps = random_pointset(n, rng)
    blockers = blocking_construction(ps, k, rng)
    want = (k + 1) * (n - 1)
    ok = blocks(ps, blockers, k) and blockers.n == want
    return blockers.n, want, ok


def _blocking_bounds(rng, n, k, build):
    ps = random_pointset(n, rng)
    report = lower_bound_report(ps, blocking_construction(ps, k, rng), k)
    return report.size, report.bound, report.respects_bound


def _random_partition(rng, n):
    blocks_count = int(rng.integers(1, n + 1))
    labels = rng.permutation(np.concatenate([np.arange(blocks_count), rng.integers(0, blocks_count, n - blocks_count)]))
    return [np.flatnonzero(labels == b).tolist() for b in range(blocks_count)]


def _mst_empty(rng, n, k, build):
    ps = random_pointset(n, rng)
    empty = check_mst_triangles_empty(ps, partition_mst(ps, _random_partition(rng, n)))
    return int(not empty), 0, empty


def _mst_depth(rng, n, k, build):
    ps = random_pointset(n, rng)
    depth = max_overlap_depth(partition_mst(ps, _random_partition(rng, n)))
    return depth, 3, depth <= 3


def _triangle_exchange(rng, n, k, build):
    a, b, p, q, ell = next(sample_exchange_configurations(rng, 1, batch=4096))
    res = check_lemma_triangle3(a, b, p, q, ell)
    return res.lhs, res.rhs, res.holds


CAMPAIGNS: dict[str, Campaign] = {
    c.name: c
    for c in [
        Campaign("connectivity", "every order-k TD graph is (k+1)-connected",
                 "kappa >= min(k + 1, n - 1)", "vertex connectivity of k-TD", (10, 50), (0, 4), False,
                 _connectivity),
        Campaign("biconnected-λ", "some bottleneck biconnected spanning subgraph lies inside 1-TD",
                 "lambda(1-TD) <= lambda*", "bottleneck of the best biconnected subgraph of 1-TD",
                 (3, 30), (1, 1), False, _bottleneck("biconnected")),
        Campaign("hamiltonian-λ", "some bottleneck Hamiltonian cycle lies inside 7-TD",
                 "lambda(7-TD) <= lambda*", "bottleneck of the best Hamiltonian cycle of 7-TD",
                 (3, 14), (7, 7), False, _bottleneck("hamiltonian")),
        Campaign("matching-λ", "some bottleneck perfect matching lies inside 6-TD",
                 "lambda(6-TD) <= lambda*", "bottleneck of the best perfect matching of 6-TD",
                 (4, 40), (6, 6), True, _bottleneck("matching")),
        Campaign("perfect-matching-2td", "2-TD has a perfect matching when n is even",
                 "nu >= n / 2", "maximum matching size of 2-TD", (4, 40), (2, 2), True,
                 _matching_size(lambda n: n // 2)),
        Campaign("matching-ratio-1td", "1-TD has a matching of size at least 2(n-1)/5",
                 "nu >= ceil(2(n - 1) / 5)", "maximum matching size of 1-TD", (2, 40), (1, 1), False,
                 _matching_size(lambda n: math.ceil(2 * (n - 1) / 5))),
        Campaign("matching-ratio-0td", "0-TD has a matching of size at least (n-1)/3",
                 "nu >= ceil((n - 1) / 3)", "maximum matching size of 0-TD", (2, 40), (0, 0), False,
                 _matching_size(lambda n: math.ceil((n - 1) / 3))),
        Campaign("blocking-upper", "(k+1)(n-1) lifted copies block k-TD",
                 "|K| == (k + 1)(n - 1) and K blocks", "size of the constructed blocker", (2, 60), (0, 3),
                 False, _blocking_upper),
        Campaign("blocking-bounds", "no blocker is smaller than the necessary-size bounds",
                 "|K| >= max(ceil((k + 1)(n - 1) / 3), [k = 0] ceil((n - 1) / 2))", "size of the blocker",
                 (2, 60), (0, 3), False, _blocking_bounds),
        Campaign("mst-empty-triangles", "triangles of a partition MST hold no point of P in their interior",
                 "0 non-empty triangles", "1 if some MST triangle holds a point, else 0", (4, 40), None, False,
                 _mst_empty),
        Campaign("mst-overlap-depth", "no point of the plane lies inside more than three partition-MST triangles",
                 "depth <= 3", "maximum overlap depth", (4, 40), None, False, _mst_depth),
        Campaign("triangle-exchange", ("max(sigma(t(a,p)), sigma(t(b,q))) < max(sigma(t(a,b)), sigma(t(p,q))) when both triangles cross "
                  "a line below p and q, t(p,q) holds the lowest corner of t(a,b), and a, b lie above t(p,q)"),
                 "lhs < rhs", "lhs = max(sigma(t(a,p)), sigma(t(b,q))); bound = rhs", (4, 4), None, False, _triangle_exchange),
    ]
}


def _draw(rng: np.random.Generator, lo: int, hi: int, even: bool) -> int:
    if even:
        lo += lo % 2
        hi -= hi % 2
        return 2 * int(rng.integers(lo // 2, hi // 2 + 1))
    return int(rng.integers(lo, hi + 1))


def resolve_campaign(name: str) -> str:
    """Accept ``matching-lambda`` as an ASCII spelling of ``matching-λ``."""
    return name if name in CAMPAIGNS else name.replace("-lambda", "-λ")


def run_campaign(config: RunConfig) -> ExperimentReport:
    """Run every trial of one campaign.

    Trial ``t`` uses its own stream ``trial_seed(seed, t)``; n and k are
    drawn from that stream first, so rows do not depend on run order.
    """
    try:
        campaign = CAMPAIGNS[resolve_campaign(config.campaign)]
    except KeyError:
        raise ValueError(f"unknown campaign {config.campaign!r}; choose from {sorted(CAMPAIGNS)}") from None
    n_lo, n_hi = config.n_range or campaign.n_range
    k_range = config.k_range or campaign.k_range
    rows = []
    for t in range(config.trials):
        s = trial_seed(config.seed, t)
        rng = make_rng(s)
        n = _draw(rng, n_lo, n_hi, campaign.even)
        k = int(rng.integers(k_range[0], k_range[1] + 1)) if k_range else None
        try:
            measured, bound, passed = campaign.run(rng, n, k, config.builder)
        except SizeLimit as exc:
            raise SizeLimit(f"campaign {campaign.name}, trial {t} (n={n}, k={k}): {exc}") from exc
        rows.append(Row(t, s, n, k, float(measured), float(bound), bool(passed)))
    return ExperimentReport(campaign, config, tuple(rows))


def run_suite(out_dir, seed: int = 0, trials: int | dict[str, int] = 20, campaigns=None) -> dict[str, ExperimentReport]:
    """Run campaigns and write ``<name>.csv``, ``<name>.md`` and ``<name>.json`` under ``out_dir``.

    A sample 1-TD graph (JSON + SVG, 0-TD edges drawn light) is written
    alongside so the drawing path is covered by the same seed.
    """
    from pathlib import Path

    from . import io

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    reports = {}
    for name in campaigns or CAMPAIGNS:
        count = trials[name] if isinstance(trials, dict) else trials
        report = run_campaign(RunConfig(name, seed=seed, trials=count))
        stem = name.replace("λ", "lambda")
        io.write_text(out / f"{stem}.csv", report.to_csv())
        io.write_text(out / f"{stem}.md", report.to_markdown())
        io.write_text(out / f"{stem}.json", io.dumps(report.to_json()))
        reports[name] = report
    ps = random_pointset(20, make_rng(seed))
    graph = build_ktd_cones(ps, 1)
    old = [(i, j) for i, j, _ in build_ktd_cones(ps, 0).edges]
    io.write_text(out / "sample_graph.json", io.dumps(io.graph_to_json(graph)))
    io.write_text(out / "sample_graph.svg", io.render_graph_svg(graph, old_edges=old))
    return reports
