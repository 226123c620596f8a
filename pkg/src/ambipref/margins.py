"""Margin operators over belief collections and the preference models they induce.

Every model here judges "f at least as good as g" by the sign of a rational
margin computed from phi = u(f) - u(g).  The two primitive functionals are
the maxmin margin (best set, worst vertex) and the minmax margin (worst set,
best vertex); everything else is a combination or a restriction of those.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

from .model import (
    Act,
    AlphaOutOfRange,
    BeliefCollection,
    BeliefSet,
    Instance,
    Prior,
    UtilityVector,
    expected_value,
    utility_vector,
)

__all__ = [
    "set_min",
    "set_max",
    "MarginProfile",
    "margin_profile",
    "GeneralizedBewley",
    "Disjunctive",
    "Conjunctive",
    "HalfMixture",
    "AlphaMixture",
    "Bewley",
    "Justifiable",
    "SEU",
    "ModelKind",
    "describe_model",
    "model_margin",
    "margin_pair",
    "Relation",
    "weakly_prefers",
    "classify",
    "robust_weakly_prefers",
    "phi_between",
]


def set_min(bset: BeliefSet, phi: UtilityVector) -> Fraction:
    """Minimal expectation of phi over the set; attained at a listed vertex."""
    return min(expected_value(v, phi) for v in bset.vertices)


def set_max(bset: BeliefSet, phi: UtilityVector) -> Fraction:
    """Maximal expectation of phi over the set; attained at a listed vertex."""
    return max(expected_value(v, phi) for v in bset.vertices)


@dataclass(frozen=True)
class MarginProfile:
    """The two primitive margins of one utility difference vector."""

    maxmin: Fraction
    minmax: Fraction


def margin_profile(collection: BeliefCollection, phi: UtilityVector) -> MarginProfile:
    """Compute both primitive margins in one pass over the vertex lists."""
    mins = []
    maxes = []
    for bset in collection:
        values = [expected_value(v, phi) for v in bset.vertices]
        mins.append(min(values))
        maxes.append(max(values))
    return MarginProfile(maxmin=max(mins), minmax=min(maxes))


@dataclass(frozen=True)
class GeneralizedBewley:
    """Judge by the maxmin margin: some belief set clears phi at every vertex."""


@dataclass(frozen=True)
class Disjunctive:
    """Judge by the larger of the two primitive margins."""


@dataclass(frozen=True)
class Conjunctive:
    """Judge by the smaller of the two primitive margins."""


@dataclass(frozen=True)
class HalfMixture:
    """Judge by the average of the two primitive margins."""


@dataclass(frozen=True)
class AlphaMixture:
    """Judge by alpha * maxmin + (1 - alpha) * minmax."""

    alpha: Fraction

    def __post_init__(self) -> None:
        if not 0 <= self.alpha <= 1:
            raise AlphaOutOfRange(f"mixture weight {self.alpha} outside [0, 1]")


@dataclass(frozen=True)
class Bewley:
    """Judge by the minimal vertex expectation of one named belief set."""

    set_name: str


@dataclass(frozen=True)
class Justifiable:
    """Judge by the maximal vertex expectation of one named belief set."""

    set_name: str


@dataclass(frozen=True)
class SEU:
    """Judge by the expectation under a single fixed prior."""

    prior: Prior


ModelKind = Union[
    GeneralizedBewley,
    Disjunctive,
    Conjunctive,
    HalfMixture,
    AlphaMixture,
    Bewley,
    Justifiable,
    SEU,
]


def describe_model(kind: ModelKind) -> str:
    """Short printable tag for reports."""
    if isinstance(kind, GeneralizedBewley):
        return "generalized-bewley"
    if isinstance(kind, Disjunctive):
        return "disjunctive"
    if isinstance(kind, Conjunctive):
        return "conjunctive"
    if isinstance(kind, HalfMixture):
        return "half-mixture"
    if isinstance(kind, AlphaMixture):
        return f"alpha-mixture({kind.alpha})"
    if isinstance(kind, Bewley):
        return f"bewley({kind.set_name})"
    if isinstance(kind, Justifiable):
        return f"justifiable({kind.set_name})"
    if isinstance(kind, SEU):
        return "seu(" + ",".join(str(p) for p in kind.prior.probs) + ")"
    raise TypeError(f"unknown model kind: {kind!r}")


def model_margin(kind: ModelKind, collection: BeliefCollection, phi: UtilityVector) -> Fraction:
    """Margin a model assigns to the utility difference phi."""
    if isinstance(kind, Bewley):
        return set_min(collection.get(kind.set_name), phi)
    if isinstance(kind, Justifiable):
        return set_max(collection.get(kind.set_name), phi)
    if isinstance(kind, SEU):
        return expected_value(kind.prior, phi)
    profile = margin_profile(collection, phi)
    if isinstance(kind, GeneralizedBewley):
        return profile.maxmin
    if isinstance(kind, Disjunctive):
        return max(profile.maxmin, profile.minmax)
    if isinstance(kind, Conjunctive):
        return min(profile.maxmin, profile.minmax)
    if isinstance(kind, HalfMixture):
        return (profile.maxmin + profile.minmax) / 2
    if isinstance(kind, AlphaMixture):
        return kind.alpha * profile.maxmin + (1 - kind.alpha) * profile.minmax
    raise TypeError(f"unknown model kind: {kind!r}")


def margin_pair(
    kind: ModelKind, collection: BeliefCollection, phi: UtilityVector
) -> tuple[Fraction, Fraction]:
    """Margins of phi and of -phi, sharing one vertex sweep.

    Uses the duality maxmin(-phi) = -minmax(phi): negating the difference
    swaps the roles of the two primitive margins.
    """
    if isinstance(kind, Bewley):
        bset = collection.get(kind.set_name)
        return set_min(bset, phi), -set_max(bset, phi)
    if isinstance(kind, Justifiable):
        bset = collection.get(kind.set_name)
        return set_max(bset, phi), -set_min(bset, phi)
    if isinstance(kind, SEU):
        value = expected_value(kind.prior, phi)
        return value, -value
    profile = margin_profile(collection, phi)
    mm, mx = profile.maxmin, profile.minmax
    if isinstance(kind, GeneralizedBewley):
        return mm, -mx
    if isinstance(kind, Disjunctive):
        return max(mm, mx), -min(mm, mx)
    if isinstance(kind, Conjunctive):
        return min(mm, mx), -max(mm, mx)
    if isinstance(kind, HalfMixture):
        half = (mm + mx) / 2
        return half, -half
    if isinstance(kind, AlphaMixture):
        a = kind.alpha
        return a * mm + (1 - a) * mx, -(a * mx + (1 - a) * mm)
    raise TypeError(f"unknown model kind: {kind!r}")


class Relation(Enum):
    """Joint outcome of judging a pair in both directions."""

    STRICTLY_PREFERRED = "strictly_preferred"
    STRICTLY_DISPREFERRED = "strictly_dispreferred"
    INDIFFERENT = "indifferent"
    INCOMPARABLE = "incomparable"


def _relation_from(forward_ok: bool, reverse_ok: bool) -> Relation:
    if forward_ok and reverse_ok:
        return Relation.INDIFFERENT
    if forward_ok:
        return Relation.STRICTLY_PREFERRED
    if reverse_ok:
        return Relation.STRICTLY_DISPREFERRED
    return Relation.INCOMPARABLE


def phi_between(instance: Instance, f: Act, g: Act) -> UtilityVector:
    """Utility difference u(f) - u(g) on which every judgment is based."""
    return utility_vector(instance.utility, f) - utility_vector(instance.utility, g)


def weakly_prefers(kind: ModelKind, instance: Instance, f: Act, g: Act) -> bool:
    """True when the model's margin for u(f) - u(g) is nonnegative."""
    return model_margin(kind, instance.collection, phi_between(instance, f, g)) >= 0


def classify(kind: ModelKind, instance: Instance, f: Act, g: Act) -> Relation:
    """Judge the pair in both directions and name the joint outcome."""
    forward, reverse = margin_pair(kind, instance.collection, phi_between(instance, f, g))
    return _relation_from(forward >= 0, reverse >= 0)


def robust_weakly_prefers(kind: ModelKind, instance: Instance, f: Act, g: Act) -> bool:
    """Strict-margin variant: holds only when the margin is strictly positive.

    A margin of exactly zero counts as not robust; audits that rely on this
    predicate flag those boundary judgments.
    """
    return model_margin(kind, instance.collection, phi_between(instance, f, g)) > 0
