"""Exact structural analysis of belief collections.

Decides, with rational LPs and enumeration, the two parametric conditions
that govern completeness and constant-bound transitivity of the margin
models: absence of a cutting hyperplane, and pairwise intersection of the
belief sets.  Also constructs the explicit counterexample acts that replay
a failing condition as a concrete axiom violation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .lp import Constraint, LinearProgram, Optimal, solve
from .margins import margin_profile
from .model import (
    Act,
    BeliefCollection,
    BeliefSet,
    Instance,
    Prior,
    UtilityVector,
    act_from_utility_vector,
    constant_act,
)

__all__ = [
    "DimensionMismatch",
    "WrongDimension",
    "CommonPrior",
    "SametCertificate",
    "CuttingHyperplane",
    "PairEntry",
    "PairwiseReport",
    "CommutativityVerdict",
    "AnalysisReport",
    "polytopes_intersect",
    "pairwise_intersection_holds",
    "find_cutting_hyperplane",
    "check_commutativity",
    "seu_collapse_binary",
    "build_incompleteness_witness",
    "build_cbt_witness",
    "phi_lattice",
    "analyze",
]


class DimensionMismatch(ValueError):
    """Two belief sets live on state spaces of different sizes."""


class WrongDimension(ValueError):
    """The operation requires a specific number of states."""


@dataclass(frozen=True)
class CommonPrior:
    """A prior in both hulls, with the mixture weights that express it."""

    prior: Prior
    weights_first: tuple[Fraction, ...]
    weights_second: tuple[Fraction, ...]

    def verify(self, first: BeliefSet, second: BeliefSet) -> bool:
        for weights, bset in ((self.weights_first, first), (self.weights_second, second)):
            if len(weights) != len(bset.vertices):
                return False
            if any(w < 0 for w in weights) or sum(weights) != 1:
                return False
            mixed = [
                sum(w * v.probs[s] for w, v in zip(weights, bset.vertices))
                for s in range(len(self.prior.probs))
            ]
            if tuple(mixed) != self.prior.probs:
                return False
        return True


@dataclass(frozen=True)
class SametCertificate:
    """Disjointness certificate: opposite functionals, both with positive floor."""

    phi1: UtilityVector
    phi2: UtilityVector
    slack: Fraction

    def verify(self, first: BeliefSet, second: BeliefSet) -> bool:
        if tuple(a + b for a, b in zip(self.phi1.entries, self.phi2.entries)) != tuple(
            Fraction(0) for _ in self.phi1.entries
        ):
            return False
        m1 = min(
            sum(p * e for p, e in zip(v.probs, self.phi1.entries)) for v in first.vertices
        )
        m2 = min(
            sum(p * e for p, e in zip(v.probs, self.phi2.entries)) for v in second.vertices
        )
        return self.slack == min(m1, m2) and self.slack > 0


@dataclass(frozen=True)
class CuttingHyperplane:
    """A functional that every belief set straddles strictly.

    ``straddles[g]`` names the vertex indices (plus side, minus side) of the
    g-th set; the offset is always reported in the shifted form where the
    threshold is zero.
    """

    normal: UtilityVector
    offset: Fraction
    straddles: tuple[tuple[int, int], ...]

    def verify(self, collection: BeliefCollection) -> bool:
        if len(self.straddles) != len(collection.sets):
            return False
        for (ip, im), bset in zip(self.straddles, collection.sets):
            values = [
                sum(p * e for p, e in zip(v.probs, self.normal.entries))
                for v in bset.vertices
            ]
            if not (values[ip] > self.offset > values[im]):
                return False
        return True


@dataclass(frozen=True)
class PairEntry:
    first: str
    second: str
    result: Union[CommonPrior, SametCertificate]

    @property
    def intersects(self) -> bool:
        return isinstance(self.result, CommonPrior)


@dataclass(frozen=True)
class PairwiseReport:
    holds: bool
    entries: tuple[PairEntry, ...]

    def failing(self) -> list[PairEntry]:
        return [e for e in self.entries if not e.intersects]


@dataclass(frozen=True)
class CommutativityVerdict:
    holds: bool
    counterexample: Optional[tuple[UtilityVector, Fraction, Fraction]]
    checked: int


@dataclass(frozen=True)
class AnalysisReport:
    pairwise: PairwiseReport
    cutting: Optional[CuttingHyperplane]
    complete_param: bool
    cbt_param: bool
    commutes: CommutativityVerdict
    seu_collapse: Optional[Prior]

    def to_jsonable(self) -> dict:
        certs = []
        for entry in self.pairwise.entries:
            item: dict = {"sets": [entry.first, entry.second]}
            if isinstance(entry.result, CommonPrior):
                item["kind"] = "common_prior"
                item["prior"] = [str(p) for p in entry.result.prior.probs]
                item["weights_first"] = [str(w) for w in entry.result.weights_first]
                item["weights_second"] = [str(w) for w in entry.result.weights_second]
            else:
                item["kind"] = "disjoint"
                item["phi1"] = [str(e) for e in entry.result.phi1.entries]
                item["phi2"] = [str(e) for e in entry.result.phi2.entries]
                item["slack"] = str(entry.result.slack)
            certs.append(item)
        cutting = None
        if self.cutting is not None:
            cutting = {
                "normal": [str(e) for e in self.cutting.normal.entries],
                "offset": str(self.cutting.offset),
                "straddles": [list(pair) for pair in self.cutting.straddles],
            }
        counter = None
        if self.commutes.counterexample is not None:
            phi, mm, mx = self.commutes.counterexample
            counter = {
                "phi": [str(e) for e in phi.entries],
                "maxmin": str(mm),
                "minmax": str(mx),
            }
        return {
            "pairwise_intersections": {
                "holds": self.pairwise.holds,
                "certificates": certs,
            },
            "cutting": cutting,
            "complete_param": self.complete_param,
            "cbt_param": self.cbt_param,
            "commutes": {
                "holds": self.commutes.holds,
                "checked": self.commutes.checked,
                "counterexample": counter,
            },
            "seu_collapse": None
            if self.seu_collapse is None
            else [str(p) for p in self.seu_collapse.probs],
        }


def _num_states(bset: BeliefSet) -> int:
    return len(bset.vertices[0].probs)


def polytopes_intersect(
    first: BeliefSet, second: BeliefSet
) -> Union[CommonPrior, SametCertificate]:
    """Decide whether two credal polytopes share a prior.

    A separation LP maximizes the floor t of <v, phi> over the first set and
    of <w, -phi> over the second, with phi boxed in [-1, 1] per state.  A
    strictly positive optimum certifies disjointness; otherwise a feasibility
    LP produces an explicit common prior as a mixture of both vertex lists.
    """
    n = _num_states(first)
    if _num_states(second) != n:
        raise DimensionMismatch(
            f"belief sets on {n} and {_num_states(second)} states cannot be compared"
        )
    rows = []
    for v in first.vertices:
        rows.append(Constraint(tuple(v.probs) + (Fraction(-1),), ">=", Fraction(0)))
    for w in second.vertices:
        rows.append(
            Constraint(tuple(-p for p in w.probs) + (Fraction(-1),), ">=", Fraction(0))
        )
    lp = LinearProgram(
        n + 1,
        [Fraction(0)] * n + [Fraction(1)],
        rows,
        lower=[Fraction(-1)] * n + [Fraction(-3)],
        upper=[Fraction(1)] * n + [Fraction(1)],
    )
    res = solve(lp)
    if not isinstance(res, Optimal):
        raise RuntimeError(f"separation program did not optimize: {res!r}")
    if res.value > 0:
        phi = res.point[:n]
        m1 = min(sum(p * e for p, e in zip(v.probs, phi)) for v in first.vertices)
        m2 = min(-sum(p * e for p, e in zip(w.probs, phi)) for w in second.vertices)
        return SametCertificate(
            phi1=UtilityVector(phi),
            phi2=UtilityVector(tuple(-e for e in phi)),
            slack=min(m1, m2),
        )

    n1, n2 = len(first.vertices), len(second.vertices)
    cols = n1 + n2
    feas = [
        Constraint(
            tuple(Fraction(1) for _ in range(n1)) + tuple(Fraction(0) for _ in range(n2)),
            "==",
            Fraction(1),
        ),
        Constraint(
            tuple(Fraction(0) for _ in range(n1)) + tuple(Fraction(1) for _ in range(n2)),
            "==",
            Fraction(1),
        ),
    ]
    for s in range(n):
        coeffs = tuple(v.probs[s] for v in first.vertices) + tuple(
            -w.probs[s] for w in second.vertices
        )
        feas.append(Constraint(coeffs, "==", Fraction(0)))
    res2 = solve(
        LinearProgram(
            cols,
            [Fraction(0)] * cols,
            feas,
            lower=[Fraction(0)] * cols,
            upper=[Fraction(1)] * cols,
        )
    )
    if not isinstance(res2, Optimal):
        raise RuntimeError(
            "separation found no positive gap, yet no common prior exists; "
            "this indicates a solver defect"
        )
    lam = res2.point[:n1]
    mu = res2.point[n1:]
    point = tuple(
        sum(l * v.probs[s] for l, v in zip(lam, first.vertices)) for s in range(n)
    )
    return CommonPrior(prior=Prior(point), weights_first=lam, weights_second=mu)


def pairwise_intersection_holds(collection: BeliefCollection) -> PairwiseReport:
    """Check every unordered pair of belief sets for a shared prior."""
    entries = []
    holds = True
    for a, b in itertools.combinations(collection.sets, 2):
        result = polytopes_intersect(a, b)
        if isinstance(result, SametCertificate):
            holds = False
        entries.append(PairEntry(a.name, b.name, result))
    return PairwiseReport(holds=holds, entries=tuple(entries))


def find_cutting_hyperplane(
    collection: BeliefCollection,
) -> Optional[CuttingHyperplane]:
    """Search for a functional that strictly straddles every belief set.

    The threshold is normalized to zero (shifting the functional by a
    constant shifts every expectation equally).  For each choice of one
    (plus, minus) vertex pair per set, an LP maximizes the common strict
    margin t; any assignment with t > 0 is a witness.  The first set's pair
    is kept in ascending index order, since negating the functional swaps
    the sides of every pair at once.  Subtrees whose partial constraints
    already cap t at zero are pruned.  The first witness in lexicographic
    assignment order is returned, so the result is deterministic.
    """
    sets = collection.sets
    if any(len(s.vertices) < 2 for s in sets):
        return None
    n = _num_states(sets[0])
    pair_lists: list[list[tuple[int, int]]] = []
    for gi, s in enumerate(sets):
        idx = range(len(s.vertices))
        if gi == 0:
            pair_lists.append([(i, j) for i in idx for j in idx if i < j])
        else:
            pair_lists.append([(i, j) for i in idx for j in idx if i != j])

    objective = [Fraction(0)] * n + [Fraction(1)]
    lower = [Fraction(-1)] * n + [Fraction(-3)]
    upper = [Fraction(1)] * n + [Fraction(1)]
    stack: list[Constraint] = []
    chosen: list[tuple[int, int]] = []

    def best_t() -> Optimal:
        res = solve(LinearProgram(n + 1, objective, list(stack), lower, upper))
        if not isinstance(res, Optimal):
            raise RuntimeError(f"straddle program did not optimize: {res!r}")
        return res

    def descend(g: int) -> Optional[CuttingHyperplane]:
        if g == len(sets):
            res = best_t()
            if res.value > 0:
                return CuttingHyperplane(
                    normal=UtilityVector(res.point[:n]),
                    offset=Fraction(0),
                    straddles=tuple(chosen),
                )
            return None
        for ip, im in pair_lists[g]:
            vp = sets[g].vertices[ip].probs
            vm = sets[g].vertices[im].probs
            stack.append(Constraint(tuple(vp) + (Fraction(-1),), ">=", Fraction(0)))
            stack.append(Constraint(tuple(vm) + (Fraction(1),), "<=", Fraction(0)))
            chosen.append((ip, im))
            prune = False
            if 0 < g < len(sets) - 1:
                prune = best_t().value <= 0
            found = None if prune else descend(g + 1)
            chosen.pop()
            stack.pop()
            stack.pop()
            if found is not None:
                return found
        return None

    return descend(0)


def phi_lattice(
    num_states: int, resolution: int = 2, radius: Fraction = Fraction(1)
) -> list[UtilityVector]:
    """Cubic lattice of raw utility vectors, independent of any instance."""
    radius = Fraction(radius)
    step = radius / resolution
    levels = [-radius + k * step for k in range(2 * resolution + 1)]
    return [
        UtilityVector(combo) for combo in itertools.product(levels, repeat=num_states)
    ]


def check_commutativity(
    collection: BeliefCollection, battery: Sequence[UtilityVector]
) -> CommutativityVerdict:
    """True iff the two margin operators agree on every battery vector."""
    if not battery:
        raise ValueError("commutativity battery must be nonempty")
    for checked, phi in enumerate(battery, start=1):
        prof = margin_profile(collection, phi)
        if prof.maxmin != prof.minmax:
            return CommutativityVerdict(
                holds=False,
                counterexample=(phi, prof.maxmin, prof.minmax),
                checked=checked,
            )
    return CommutativityVerdict(holds=True, counterexample=None, checked=len(battery))


def seu_collapse_binary(collection: BeliefCollection) -> Optional[Prior]:
    """Single prior that the models collapse to on two states, if any.

    With two states each belief set is an interval of first-state masses;
    the collapse prior exists exactly when the largest interval minimum
    meets the smallest interval maximum.
    """
    n = _num_states(collection.sets[0])
    if n != 2:
        raise WrongDimension(f"collapse analysis needs exactly 2 states, got {n}")
    a = max(min(v.probs[0] for v in s.vertices) for s in collection.sets)
    b = min(max(v.probs[0] for v in s.vertices) for s in collection.sets)
    if a != b:
        return None
    return Prior((a, 1 - a))


def _fit_scale(phi: Sequence[Fraction], lo: Fraction, hi: Fraction) -> Fraction:
    """Largest scale (capped at 1) keeping s*phi inside [lo, hi] per state."""
    if lo > 0 or hi < 0:
        raise ValueError("utility range must contain 0 to host the witness acts")
    caps = [hi / v for v in phi if v > 0] + [lo / v for v in phi if v < 0]
    scale = min([Fraction(1), *caps])
    if scale <= 0:
        raise ValueError("utility range is degenerate on the witness side")
    return scale


def build_incompleteness_witness(
    collection: BeliefCollection, cut: CuttingHyperplane, instance: Instance
) -> tuple[Act, Act]:
    """Acts (f, x0) that the maxmin-over-sets model leaves incomparable.

    The functional is shifted to threshold zero, scaled into the utility
    range, and realized as an act; x0 is the zero-utility constant.  Both
    directional margins are recomputed and must be strictly negative.
    """
    shifted = [e - cut.offset for e in cut.normal.entries]
    lo, hi = instance.utility_bounds()
    s = _fit_scale(shifted, lo, hi)
    target = [s * e for e in shifted]
    f = act_from_utility_vector(instance, target)
    x0 = constant_act(instance, Fraction(0))
    prof = margin_profile(collection, UtilityVector(tuple(target)))
    if not (prof.maxmin < 0 and -prof.minmax < 0):
        raise RuntimeError(
            "cutting hyperplane did not produce an incomparable pair; "
            f"margins were {prof.maxmin} and {-prof.minmax}"
        )
    return f, x0


def build_cbt_witness(
    collection: BeliefCollection, cert: SametCertificate, instance: Instance
) -> tuple[Act, Act, Act]:
    """Triple (x0, f, xe) replaying a constant-bound transitivity failure.

    x0 is the zero constant, xe the better constant at half the certified
    slack, and f realizes the separating functional: the first belief set
    robustly prefers f to xe, the second robustly prefers x0 to f, yet xe
    beats x0 outright.
    """
    lo, hi = instance.utility_bounds()
    s = _fit_scale(cert.phi1.entries, lo, hi)
    target = [s * e for e in cert.phi1.entries]
    eps = s * cert.slack / 2
    f = act_from_utility_vector(instance, target)
    x0 = constant_act(instance, Fraction(0))
    xe = constant_act(instance, eps)
    phi = UtilityVector(tuple(target))
    down = margin_profile(collection, UtilityVector(tuple(-e for e in phi.entries)))
    up = margin_profile(
        collection, UtilityVector(tuple(e - eps for e in phi.entries))
    )
    if not (down.maxmin > 0 and up.maxmin > 0 and eps > 0):
        raise RuntimeError(
            "separation certificate did not produce a transitivity failure; "
            f"margins were {down.maxmin}, {up.maxmin}, eps {eps}"
        )
    return x0, f, xe


def analyze(instance: Instance, *, resolution: int = 2) -> AnalysisReport:
    """Full parametric analysis of an instance's belief collection."""
    collection = instance.collection
    pairwise = pairwise_intersection_holds(collection)
    cutting = find_cutting_hyperplane(collection)
    n = instance.num_states
    commutes = check_commutativity(collection, phi_lattice(n, resolution=resolution))
    collapse = seu_collapse_binary(collection) if n == 2 else None
    return AnalysisReport(
        pairwise=pairwise,
        cutting=cutting,
        complete_param=cutting is None,
        cbt_param=pairwise.holds,
        commutes=commutes,
        seu_collapse=collapse,
    )
