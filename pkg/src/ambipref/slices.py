"""Cross-sections of the margin cones on planes through the diagonal.

A slice plane is spanned by the all-ones vector and the off-diagonal
component of a chosen direction.  Directions around the slice are rational
points on the unit circle, generated by the tangent half-angle substitution,
so every margin sign along the circle is decided exactly; floats appear only
in exported decimal columns.  Convexity of a cone's slice is certified by a
single-arc test on the sampled signs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

from .margins import AlphaMixture, margin_profile
from .model import BeliefCollection, UtilityVector

__all__ = [
    "DegenerateDirection",
    "UnknownFormat",
    "SlicePlane",
    "SliceSample",
    "SliceProfile",
    "ConvexityVerdict",
    "CONES",
    "slice_profile",
    "certify_slice_convexity",
    "export_slice",
]

CONES = ("maxmin", "minmax", "half", "alpha", "conjunctive", "disjunctive")


class DegenerateDirection(ValueError):
    """The direction is proportional to the diagonal, so it spans no plane."""


class UnknownFormat(ValueError):
    """Unsupported export format."""


def _primitive(entries: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Rescale a rational vector to the smallest integer vector, same ray."""
    scale = lcm(*(e.denominator for e in entries))
    ints = [int(e * scale) for e in entries]
    g = gcd(*(abs(v) for v in ints))
    return tuple(Fraction(v, g) for v in ints)


@dataclass(frozen=True)
class SlicePlane:
    """Ordered basis (diagonal, off-diagonal residue) of a slice plane."""

    e1: tuple[Fraction, ...]
    e2: tuple[Fraction, ...]

    @classmethod
    def through(cls, direction: Sequence) -> "SlicePlane":
        entries = (
            direction.entries
            if isinstance(direction, UtilityVector)
            else tuple(Fraction(d) for d in direction)
        )
        n = len(entries)
        if n < 2:
            raise DegenerateDirection("a slice plane needs at least two states")
        mean = sum(entries) / n
        residue = tuple(e - mean for e in entries)
        if all(r == 0 for r in residue):
            raise DegenerateDirection(
                "direction is proportional to the diagonal and spans no plane"
            )
        return cls(e1=tuple(Fraction(1) for _ in range(n)), e2=_primitive(residue))

    @property
    def num_states(self) -> int:
        return len(self.e1)


@dataclass(frozen=True)
class SliceSample:
    theta: Fraction
    direction: UtilityVector
    maxmin: Fraction
    minmax: Fraction
    half: Fraction
    alpha: Optional[Fraction]


@dataclass(frozen=True)
class SliceProfile:
    plane: SlicePlane
    alpha_weight: Optional[Fraction]
    samples: tuple[SliceSample, ...]
    arc_summary: tuple[tuple[str, tuple[tuple[int, int], ...]], ...]

    def arcs(self, cone: str) -> tuple[tuple[int, int], ...]:
        for name, arcs in self.arc_summary:
            if name == cone:
                return arcs
        raise ValueError(f"no arc summary for cone {cone!r}")


@dataclass(frozen=True)
class ConvexityVerdict:
    cone: str
    convex: bool
    arcs: tuple[tuple[int, int], ...]


def _circle_points(n: int) -> list[tuple[Fraction, Fraction]]:
    """n rational unit-circle points in circular order; point k+n/2 is -point k."""
    half = n // 2
    right = []
    for j in range(half):
        u = Fraction(2 * j - half, half)
        den = 1 + u * u
        right.append(((1 - u * u) / den, 2 * u / den))
    return right + [(-c, -s) for c, s in right]


def _sign_arcs(flags: Sequence[bool]) -> tuple[tuple[int, int], ...]:
    """Maximal circular runs of True as (start, length), sorted by start."""
    n = len(flags)
    if all(flags):
        return ((0, n),)
    if not any(flags):
        return ()
    arcs = []
    for i in range(n):
        if flags[i] and not flags[i - 1]:
            length = 1
            while flags[(i + length) % n]:
                length += 1
            arcs.append((i, length))
    return tuple(sorted(arcs))


def slice_profile(
    collection: BeliefCollection,
    plane: SlicePlane,
    n: int,
    alpha: Optional[Fraction] = None,
) -> SliceProfile:
    """Sample the four margin operators around one diagonal slice.

    The sample count must be even (so antipodes pair up index-wise) and at
    least 8.  Sample k is labeled theta = k/n turns; its direction is the
    k-th rational circle point combined through the plane basis.
    """
    if n < 8:
        raise ValueError(f"need at least 8 samples, got {n}")
    if n % 2:
        raise ValueError(f"sample count must be even so antipodes align, got {n}")
    weight = AlphaMixture(alpha).alpha if alpha is not None else None
    dim = plane.num_states
    samples = []
    for k, (c, s) in enumerate(_circle_points(n)):
        phi = UtilityVector(
            tuple(c * plane.e1[i] + s * plane.e2[i] for i in range(dim))
        )
        prof = margin_profile(collection, phi)
        mixed = (
            weight * prof.maxmin + (1 - weight) * prof.minmax
            if weight is not None
            else None
        )
        samples.append(
            SliceSample(
                theta=Fraction(k, n),
                direction=phi,
                maxmin=prof.maxmin,
                minmax=prof.minmax,
                half=(prof.maxmin + prof.minmax) / 2,
                alpha=mixed,
            )
        )

    summary = []
    for cone in CONES:
        if cone == "alpha" and weight is None:
            continue
        summary.append((cone, _sign_arcs([_cone_value(s, cone) >= 0 for s in samples])))
    return SliceProfile(
        plane=plane,
        alpha_weight=weight,
        samples=tuple(samples),
        arc_summary=tuple(summary),
    )


def _cone_value(sample: SliceSample, cone: str) -> Fraction:
    if cone == "maxmin":
        return sample.maxmin
    if cone == "minmax":
        return sample.minmax
    if cone == "half":
        return sample.half
    if cone == "alpha":
        if sample.alpha is None:
            raise ValueError("profile was sampled without an alpha weight")
        return sample.alpha
    if cone == "conjunctive":
        return min(sample.maxmin, sample.minmax)
    if cone == "disjunctive":
        return max(sample.maxmin, sample.minmax)
    raise ValueError(f"unknown cone {cone!r}; expected one of {CONES}")


def certify_slice_convexity(profile: SliceProfile, cone: str) -> ConvexityVerdict:
    """Single-arc convexity check for one cone's slice.

    For every cone but the disjunctive one, the nonnegative samples must
    form one contiguous circular arc (an empty or full circle counts).  The
    disjunctive cone is a union of two half-plane-like regions, so its
    complement is certified instead.
    """
    if cone not in CONES:
        raise ValueError(f"unknown cone {cone!r}; expected one of {CONES}")
    if cone == "disjunctive":
        flags = [_cone_value(s, cone) < 0 for s in profile.samples]
    else:
        flags = [_cone_value(s, cone) >= 0 for s in profile.samples]
    arcs = _sign_arcs(flags)
    return ConvexityVerdict(cone=cone, convex=len(arcs) <= 1, arcs=arcs)


def export_slice(profile: SliceProfile, fmt: str) -> str:
    """Render a profile as CSV (decimal) or JSON (exact and decimal)."""
    if fmt == "csv":
        lines = ["theta,maxmin,minmax,half,alpha"]
        for s in profile.samples:
            alpha = "" if s.alpha is None else repr(float(s.alpha))
            lines.append(
                ",".join(
                    [
                        repr(float(s.theta)),
                        repr(float(s.maxmin)),
                        repr(float(s.minmax)),
                        repr(float(s.half)),
                        alpha,
                    ]
                )
            )
        return "\n".join(lines) + "\n"
    if fmt == "json":
        def both(x: Fraction) -> dict:
            return {"exact": str(x), "value": float(x)}

        doc = {
            "alpha_weight": None
            if profile.alpha_weight is None
            else str(profile.alpha_weight),
            "plane": {
                "e1": [str(e) for e in profile.plane.e1],
                "e2": [str(e) for e in profile.plane.e2],
            },
            "samples": [
                {
                    "theta": both(s.theta),
                    "direction": [str(e) for e in s.direction.entries],
                    "maxmin": both(s.maxmin),
                    "minmax": both(s.minmax),
                    "half": both(s.half),
                    "alpha": None if s.alpha is None else both(s.alpha),
                }
                for s in profile.samples
            ],
            "arc_summary": {
                cone: [list(a) for a in arcs] for cone, arcs in profile.arc_summary
            },
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    raise UnknownFormat(f"unsupported format {fmt!r}; expected 'csv' or 'json'")
