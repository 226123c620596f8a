from __future__ import annotations

import json
from fractions import Fraction

import pytest

from ambipref import (
    CONES,
    AlphaOutOfRange,
    BeliefCollection,
    BeliefSet,
    DegenerateDirection,
    Prior,
    SlicePlane,
    UnknownFormat,
    UtilityVector,
    certify_slice_convexity,
    export_slice,
    slice_profile,
)

F = Fraction


def singleton_collection(p1: F) -> BeliefCollection:
    return BeliefCollection((BeliefSet("only", (Prior((p1, 1 - p1)),)),))


class TestSlicePlane:
    def test_mean_is_projected_out(self):
        plane = SlicePlane.through((F(1), F(0)))
        assert plane.e1 == (F(1), F(1))
        assert plane.e2 == (F(1), F(-1))

    def test_same_plane_from_the_off_diagonal_direction(self):
        assert SlicePlane.through((1, -1)) == SlicePlane.through((F(1), F(0)))

    def test_residue_is_rescaled_to_primitive_integers(self):
        plane = SlicePlane.through((F(1), F(-3), F(0)))
        assert plane.e2 == (F(5), F(-7), F(2))
        assert plane.num_states == 3

    def test_accepts_a_utility_vector(self):
        plane = SlicePlane.through(UtilityVector((F(1, 2), F(-1, 2))))
        assert plane.e2 == (F(1), F(-1))

    def test_diagonal_direction_rejected(self):
        with pytest.raises(DegenerateDirection):
            SlicePlane.through((F(2), F(2)))

    def test_single_state_rejected(self):
        with pytest.raises(DegenerateDirection):
            SlicePlane.through((F(5),))


@pytest.fixture()
def disjoint_profile(disjoint_pair):
    plane = SlicePlane.through((1, -1))
    return slice_profile(disjoint_pair.collection, plane, 16)


class TestSampling:
    def test_sample_count_and_theta_labels(self, disjoint_profile):
        samples = disjoint_profile.samples
        assert len(samples) == 16
        assert [s.theta for s in samples] == [F(k, 16) for k in range(16)]

    def test_directions_lie_on_a_rational_unit_circle(self, disjoint_profile):
        plane = disjoint_profile.plane
        for s in disjoint_profile.samples:
            # recover the circle coordinates from phi = c*e1 + s*e2
            a, b = s.direction.entries
            c = (a + b) / 2
            t = (a - b) / 2
            assert c * c + t * t == 1
            assert s.direction.entries == (
                c * plane.e1[0] + t * plane.e2[0],
                c * plane.e1[1] + t * plane.e2[1],
            )

    def test_antipodal_samples_negate_each_other(self, disjoint_profile):
        samples = disjoint_profile.samples
        for k in range(8):
            near, far = samples[k], samples[k + 8]
            assert far.direction.entries == tuple(-e for e in near.direction.entries)
            assert far.maxmin == -near.minmax
            assert far.half == -near.half

    def test_half_is_the_operator_midpoint(self, disjoint_profile):
        for s in disjoint_profile.samples:
            assert s.half == (s.maxmin + s.minmax) / 2
        assert all(s.alpha is None for s in disjoint_profile.samples)

    def test_too_few_samples(self, disjoint_pair):
        plane = SlicePlane.through((1, -1))
        with pytest.raises(ValueError, match="at least 8"):
            slice_profile(disjoint_pair.collection, plane, 6)

    def test_odd_sample_count(self, disjoint_pair):
        plane = SlicePlane.through((1, -1))
        with pytest.raises(ValueError, match="even"):
            slice_profile(disjoint_pair.collection, plane, 9)

    def test_alpha_weight_out_of_range(self, disjoint_pair):
        plane = SlicePlane.through((1, -1))
        with pytest.raises(AlphaOutOfRange):
            slice_profile(disjoint_pair.collection, plane, 16, alpha=F(3, 2))


class TestArcs:
    def test_disjoint_pair_arcs(self, disjoint_pair):
        plane = SlicePlane.through((1, -1))
        profile = slice_profile(disjoint_pair.collection, plane, 16)
        assert profile.arcs("maxmin") == ((0, 9),)
        assert profile.arcs("minmax") == ((1, 7),)
        assert profile.arcs("half") == ((0, 9),)
        # the maxmin boundary samples sit exactly on the zero set
        assert profile.samples[0].half == 0
        assert profile.samples[8].half == 0

    def test_overlapping_intervals_nest_the_other_way(self, overlapping_intervals):
        plane = SlicePlane.through((1, -1))
        profile = slice_profile(overlapping_intervals.collection, plane, 16)
        assert profile.arcs("maxmin") == ((0, 8),)
        assert profile.arcs("minmax") == ((0, 9),)

    def test_unknown_cone_name(self, disjoint_pair):
        plane = SlicePlane.through((1, -1))
        profile = slice_profile(disjoint_pair.collection, plane, 16)
        with pytest.raises(ValueError, match="no arc summary"):
            profile.arcs("sideways")

    def test_alpha_arcs_appear_only_when_weighted(self, disjoint_pair):
        plane = SlicePlane.through((1, -1))
        bare = slice_profile(disjoint_pair.collection, plane, 16)
        weighted = slice_profile(disjoint_pair.collection, plane, 16, alpha=F(3, 4))
        assert [name for name, _ in bare.arc_summary] == [
            c for c in CONES if c != "alpha"
        ]
        assert weighted.arcs("alpha") == ((0, 9),)
        for s in weighted.samples:
            assert s.alpha == F(3, 4) * s.maxmin + F(1, 4) * s.minmax


class TestConvexityCertificates:
    def test_every_cone_is_single_arc_on_the_disjoint_pair(self, disjoint_pair):
        plane = SlicePlane.through((1, -1))
        profile = slice_profile(disjoint_pair.collection, plane, 16, alpha=F(3, 4))
        for cone in CONES:
            verdict = certify_slice_convexity(profile, cone)
            assert verdict.cone == cone
            assert verdict.convex
            assert len(verdict.arcs) == 1

    def test_disjunctive_certificate_covers_the_complement(self, disjoint_pair):
        plane = SlicePlane.through((1, -1))
        profile = slice_profile(disjoint_pair.collection, plane, 16)
        verdict = certify_slice_convexity(profile, "disjunctive")
        assert verdict.arcs == ((9, 7),)
        # the summary stores the nonnegative arc, the certificate its complement
        assert profile.arcs("disjunctive") == ((0, 9),)

    def test_verdicts_stable_under_sample_doubling(self, disjoint_pair):
        plane = SlicePlane.through((1, -1))
        coarse = slice_profile(disjoint_pair.collection, plane, 16, alpha=F(3, 4))
        fine = slice_profile(disjoint_pair.collection, plane, 32, alpha=F(3, 4))
        for cone in CONES:
            a = certify_slice_convexity(coarse, cone)
            b = certify_slice_convexity(fine, cone)
            assert a.convex == b.convex
            assert len(a.arcs) == len(b.arcs)

    def test_singleton_set_gives_a_half_circle(self):
        collection = singleton_collection(F(1, 2))
        plane = SlicePlane.through((1, -1))
        profile = slice_profile(collection, plane, 16)
        assert profile.arcs("maxmin") == profile.arcs("minmax") == ((0, 9),)
        assert profile.samples[0].maxmin == 0
        assert profile.samples[8].maxmin == 0

    def test_alpha_certificate_needs_a_weight(self, disjoint_pair):
        plane = SlicePlane.through((1, -1))
        profile = slice_profile(disjoint_pair.collection, plane, 16)
        with pytest.raises(ValueError, match="without an alpha weight"):
            certify_slice_convexity(profile, "alpha")

    def test_unknown_cone_rejected(self, disjoint_pair):
        plane = SlicePlane.through((1, -1))
        profile = slice_profile(disjoint_pair.collection, plane, 16)
        with pytest.raises(ValueError, match="unknown cone"):
            certify_slice_convexity(profile, "sideways")


class TestExport:
    def test_csv_layout(self, disjoint_pair):
        plane = SlicePlane.through((1, -1))
        profile = slice_profile(disjoint_pair.collection, plane, 16)
        text = export_slice(profile, "csv")
        lines = text.splitlines()
        assert lines[0] == "theta,maxmin,minmax,half,alpha"
        assert lines[1] == "0.0,0.2,-0.2,0.0,"
        assert len(lines) == 17
        assert text.endswith("\n")

    def test_csv_alpha_column(self, disjoint_pair):
        plane = SlicePlane.through((1, -1))
        profile = slice_profile(disjoint_pair.collection, plane, 16, alpha=F(1, 2))
        first = export_slice(profile, "csv").splitlines()[1]
        assert first == "0.0,0.2,-0.2,0.0,0.0"

    def test_json_round_trip(self, disjoint_pair):
        plane = SlicePlane.through((1, -1))
        profile = slice_profile(disjoint_pair.collection, plane, 16, alpha=F(3, 4))
        doc = json.loads(export_slice(profile, "json"))
        assert doc["alpha_weight"] == "3/4"
        assert doc["plane"] == {"e1": ["1", "1"], "e2": ["1", "-1"]}
        assert len(doc["samples"]) == 16
        first = doc["samples"][0]
        assert first["maxmin"] == {"exact": "1/5", "value": 0.2}
        assert first["alpha"] == {"exact": "1/10", "value": 0.1}
        assert doc["arc_summary"]["maxmin"] == [[0, 9]]

    def test_unknown_format(self, disjoint_pair):
        plane = SlicePlane.through((1, -1))
        profile = slice_profile(disjoint_pair.collection, plane, 16)
        with pytest.raises(UnknownFormat):
            export_slice(profile, "yaml")
