"""Run every campaign with one seed and write CSV/markdown/JSON reports.

    python3 scripts/run_campaigns.py --seed 0 --trials 50 --out results/
"""

import argparse
import sys

from ktd.experiments import CAMPAIGNS, run_suite


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--out", default="results")
    parser.add_argument("--only", nargs="*", choices=sorted(CAMPAIGNS), help="subset of campaigns")
    args = parser.parse_args()

    reports = run_suite(args.out, seed=args.seed, trials=args.trials, campaigns=args.only)
    width = max(len(name) for name in reports)
    for name, report in reports.items():
        status = "ok" if report.ok else "FAILED"
        print(f"{name:<{width}}  {report.passes:>4}/{len(report.rows):<4} {status}")
    return 0 if all(r.ok for r in reports.values()) else 1


if __name__ == "__main__":
    sys.exit(main())
