"""Export circle-slice profiles for the bundled instances.

For each instance under instances/ this samples the margin operators on a
two-dimensional slice through the simplex diagonal, certifies which cones cut
the slice in a single arc, and writes one CSV plus one JSON file per direction
into the output directory.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from ambipref import (
    CONES,
    SlicePlane,
    certify_slice_convexity,
    export_slice,
    load_instance,
    slice_profile,
)

DIRECTIONS: tuple[tuple[Fraction, ...], ...] = (
    (Fraction(1), Fraction(0)),
    (Fraction(1), Fraction(-1)),
    (Fraction(1), Fraction(-3)),
)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--instances", type=Path, default=Path("instances"))
    parser.add_argument("--out", type=Path, default=Path("slices_out"))
    parser.add_argument("--samples", type=int, default=64)
    parser.add_argument("--alpha", default="3/4", help="alpha-mixture weight, a rational in [0, 1]")
    args = parser.parse_args(argv)

    paths = sorted(args.instances.glob("*.json"))
    if not paths:
        print(f"no instance files under {args.instances}", file=sys.stderr)
        return 1
    args.out.mkdir(parents=True, exist_ok=True)
    alpha = Fraction(args.alpha)

    for path in paths:
        instance = load_instance(path)
        for direction in DIRECTIONS:
            if len(direction) != instance.num_states:
                continue
            plane = SlicePlane.through(direction)
            profile = slice_profile(instance.collection, plane, args.samples, alpha=alpha)
            tag = "_".join(str(c).replace("/", "over").replace("-", "m") for c in direction)
            stem = args.out / f"{path.stem}__d{tag}"
            stem.with_suffix(".csv").write_text(export_slice(profile, "csv"))
            stem.with_suffix(".json").write_text(export_slice(profile, "json"))
            verdicts = []
            for cone in CONES:
                v = certify_slice_convexity(profile, cone)
                verdicts.append(f"{cone}={'1arc' if v.convex else 'split'}")
            print(f"{stem.name}: {'  '.join(verdicts)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
