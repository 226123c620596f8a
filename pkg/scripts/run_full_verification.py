"""Run every verification suite over a seeded instance batch and dump the report.

The heavy lifting happens in :func:`ambipref.verify`.  This wrapper picks the
seed range, forwards generator overrides, and writes the JSON report somewhere
useful.  Worker count comes from the AMBIPREF_THREADS environment variable, so

    AMBIPREF_THREADS=4 python3 scripts/run_full_verification.py --seeds 0..99

spreads the batch over four processes.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from ambipref import GenParams, SUITES, VerifyConfig, verify
from ambipref.cli import parse_seed_range


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seeds", default="0..99", help="seed range, e.g. 0..99 or 3,7,11")
    parser.add_argument("--suites", default="all", help="comma list of suite names, or 'all'")
    parser.add_argument("--states", type=int, default=None, help="fix the state count (default: alternate 2 and 3)")
    parser.add_argument("--sets", type=int, default=None)
    parser.add_argument("--vertices", type=int, default=None)
    parser.add_argument("--denominator", type=int, default=None)
    parser.add_argument("--out", type=Path, default=Path("verification_report.json"))
    args = parser.parse_args(argv)

    seeds = parse_seed_range(args.seeds)
    suites = SUITES if args.suites == "all" else tuple(s.strip() for s in args.suites.split(","))

    overrides = {
        "num_states": args.states,
        "num_sets": args.sets,
        "vertices_per_set": args.vertices,
        "denominator_bound": args.denominator,
    }
    supplied = {k: v for k, v in overrides.items() if v is not None}
    params = None
    if supplied:
        if args.states is None:
            supplied["num_states"] = GenParams.num_states
        params = GenParams(**supplied)

    config = VerifyConfig(params=params)
    started = time.monotonic()
    report = verify(suites, seeds, config=config)
    elapsed = time.monotonic() - started

    args.out.write_text(json.dumps(report.to_jsonable(), indent=2, sort_keys=True) + "\n")

    for entry in report.suites:
        flag = "pass" if entry.passed else "FAIL"
        print(f"{entry.theorem:8s} {flag}  instances={entry.instances}  "
              f"batteries={len(entry.batteries)}  boundary_flags={entry.boundary_flags}")
    print(f"seeds={len(seeds)}  elapsed={elapsed:.1f}s  report={args.out}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
