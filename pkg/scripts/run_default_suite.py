"""Run the full acceptance grid and write a JSON report.

    python3 scripts/run_default_suite.py [--out report.json] [--criteria 1,2] [--timing]

Prints a per-criterion summary to stderr; exit code 0 iff nothing failed.
"""
import argparse
import sys
from collections import Counter

from exptensor.cli import SuiteConfig, acceptance_grid, emit_report, run_suite


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="default_suite.json")
    ap.add_argument("--criteria", default="")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--timing", action="store_true")
    args = ap.parse_args(argv)
    crit = [int(c) for c in args.criteria.split(",") if c.strip()] or list(range(1, 13))

    records = []
    for c in crit:
        recs = run_suite(SuiteConfig(acceptance_grid([c]), args.seed, args.timing))
        counts = Counter(r.status for r in recs)
        print(f"criterion {c:2d}: {len(recs):4d} checks  " + "  ".join(f"{k}={v}" for k, v in sorted(counts.items())),
              file=sys.stderr)
        records.extend(recs)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(emit_report(records))
    return 0 if all(r.status != "fail" for r in records) else 1


if __name__ == "__main__":
    raise SystemExit(main())
