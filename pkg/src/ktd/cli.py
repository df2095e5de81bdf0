"""Command-line entry point.

Exit codes: 0 success, 1 a checked property failed, 2 bad input,
3 an exact routine hit its size cap.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .blocking import blocking_construction, blocks, lower_bounds
from .errors import InvalidPointSet, KTDError, OddN, ParseError, RoleMismatch, SizeLimit
from .experiments import CAMPAIGNS, RunConfig, run_campaign
from .graphs import build_ktd_cones
from .sampling import make_rng, random_pointset
from .scenarios import (
    connectivity_witness,
    load_counterexample,
    search_hamiltonicity_counterexample,
    search_matching_counterexample,
    validate,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_SIZE = 0, 1, 2, 3
WITNESS_KINDS = ("connectivity", "matching-counterexample", "hamiltonicity-counterexample")


def _range(text: str) -> tuple[int, int]:
    """``"12"`` or ``"4:40"``."""
    try:
        parts = [int(p) for p in text.split(":")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO:HI, got {text!r}") from None
    if len(parts) == 1:
        parts *= 2
    if len(parts) != 2 or parts[0] > parts[1]:
        raise argparse.ArgumentTypeError(f"expected N or LO:HI, got {text!r}")
    return parts[0], parts[1]


def _pair(text: str) -> tuple[int, int]:
    """``"A:B"`` with both parts positive."""
    try:
        a, b = (int(p) for p in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A:B, got {text!r}") from None
    return a, b


def _emit(text: str, out: str | None) -> None:
    if out:
        io.write_text(out, text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_generate(args) -> int:
    n = args.n[0] if args.n else 10
    if args.n and args.n[0] != args.n[1]:
        n = int(make_rng(args.seed).integers(args.n[0], args.n[1] + 1))
    ps = random_pointset(n, make_rng(args.seed))
    _emit(io.dumps(io.points_to_json(ps)), args.out)
    return EXIT_OK


def cmd_build(args) -> int:
    ps = io.read_points(args.points).validate()
    graph = build_ktd_cones(ps, args.k)
    _emit(io.dumps(io.graph_to_json(graph)), args.out)
    if args.svg:
        old = []
        if args.base_k is not None:
            old = [(i, j) for i, j, _ in build_ktd_cones(ps, args.base_k).edges]
        tris = [(i, j) for i, j, _ in graph.edges] if args.triangles else []
        io.write_text(args.svg, io.render_graph_svg(graph, old_edges=old, triangles=tris))
    return EXIT_OK


def cmd_experiment(args) -> int:
    config = RunConfig(args.campaign, seed=args.seed, trials=args.trials, n_range=args.n,
                       k_range=args.k_range)
    report = run_campaign(config)
    fmt = args.format or "csv"
    text = {"csv": report.to_csv, "md": report.to_markdown, "json": lambda: io.dumps(report.to_json())}[fmt]()
    _emit(text, args.out)
    if args.summary:
        io.write_text(args.summary, report.to_markdown())
    print(f"{report.campaign.name}: {report.passes}/{len(report.rows)} passed", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_block(args) -> int:
    ps = io.read_points(args.points).validate()
    blockers = blocking_construction(ps, args.k, make_rng(args.seed))
    _emit(io.dumps(io.blocker_to_json(ps, args.k, blockers)), args.out)
    ok = blocks(ps, blockers, args.k)
    mst, matching = lower_bounds(ps.n, args.k)
    print(f"|K| = {blockers.n}, blocks = {ok}, lower bound = {max(mst, matching or 0)}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_witness(args) -> int:
    if args.kind == "connectivity":
        sizes = args.sizes or (3, 3)
        spec = connectivity_witness(args.k if args.k is not None else 0, sizes[0], sizes[1], seed=args.seed)
    elif args.search:
        search = {"matching-counterexample": search_matching_counterexample,
                  "hamiltonicity-counterexample": search_hamiltonicity_counterexample}[args.kind]
        spec = search(seed=args.seed)
        if spec is None:
            print("constraint search found no valid layout", file=sys.stderr)
            return EXIT_VIOLATION
    else:
        spec = load_counterexample(args.kind)
    _emit(io.dumps(spec.to_json()), args.out)
    if args.svg:
        io.write_text(args.svg, io.render_witness_svg(spec))
    return EXIT_OK


def cmd_validate(args) -> int:
    report = validate(io.read_witness(args.witness))
    _emit(io.dumps(report.to_json()), args.out)
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_render(args) -> int:
    data = io.load_json(args.file)
    if isinstance(data, dict) and "roles" in data:
        svg = io.render_witness_svg(io.read_witness(args.file))
    elif isinstance(data, dict) and "edges" in data:
        svg = io.render_graph_svg(io.read_graph(args.file))
    elif isinstance(data, dict) and "points" in data:
        svg = io.render_svg(io.read_points(args.file))
    else:
        raise ParseError(f"{args.file}: not a point, graph or witness file")
    _emit(svg, args.out or args.svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ktd", description="Order-k triangular-distance Delaunay graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        if seed:
            p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="output file (default: stdout)")
        return p

    p = common(sub.add_parser("generate", help="random point set in general position"))
    p.add_argument("--n", type=_range, help="point count N or range LO:HI")
    p.set_defaults(func=cmd_generate)

    p = common(sub.add_parser("build", help="k-TD graph of a point file"), seed=False)
    p.add_argument("points")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--svg", help="also draw the graph")
    p.add_argument("--base-k", type=int, help="draw edges also present at this order in a light colour")
    p.add_argument("--triangles", action="store_true", help="outline t(p, q) for every edge")
    p.set_defaults(func=cmd_build)

    p = common(sub.add_parser("experiment", help="run a seeded campaign"))
    names = sorted(CAMPAIGNS)
    p.add_argument("campaign", choices=names + sorted({n.replace("λ", "lambda") for n in names} - set(names)))
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--n", type=_range)
    p.add_argument("--k", dest="k_range", type=_range)
    p.add_argument("--format", choices=("json", "csv", "md"))
    p.add_argument("--summary", help="also write the markdown summary here")
    p.set_defaults(func=cmd_experiment)

    p = common(sub.add_parser("block", help="blocking set for a point file"))
    p.add_argument("points")
    p.add_argument("--k", type=int, default=0)
    p.set_defaults(func=cmd_block)

    p = common(sub.add_parser("witness", help="emit a witness configuration"))
    p.add_argument("kind", choices=WITNESS_KINDS)
    p.add_argument("--k", type=int)
    p.add_argument("--sizes", type=_pair, help="cluster sizes A:B for the connectivity witness")
    p.add_argument("--search", action="store_true", help="regenerate a counterexample instead of loading it")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_witness)

    p = common(sub.add_parser("validate", help="check a witness file"), seed=False)
    p.add_argument("witness")
    p.set_defaults(func=cmd_validate)

    p = common(sub.add_parser("render", help="draw a point, graph or witness file as SVG"), seed=False)
    p.add_argument("file")
    p.add_argument("--svg", help="same as --out")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SizeLimit as exc:
        print(f"size limit: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (ParseError, InvalidPointSet, RoleMismatch, OddN, FileNotFoundError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except KTDError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
