"""Transport distances: hand-computed values, domain guards, metric axioms,
and exact agreement between measure-space and transform-space norms."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given

from conftest import probability_measures, signed_measures
from scdt.errors import MetricDomainError
from scdt.measures import DiscreteMeasure, SignedMeasure
from scdt.metrics import DistanceReport, d_s, d_w2, transform_l2, w2
from scdt.steps import POS_INF
from scdt.transform import CdtResult, ScdtResult, TransformConfig, scdt_forward


def delta(x: float, mass: float = 1.0) -> DiscreteMeasure:
    return DiscreteMeasure(np.array([x]), np.array([mass]))


class TestDistanceReport:
    def test_components_must_explain_value(self):
        DistanceReport(5.0, {"a": 3.0, "b": 4.0})
        with pytest.raises(ValueError):
            DistanceReport(2.0, {"a": 1.0, "b": 1.0})

    def test_rejects_negative_and_infinite(self):
        with pytest.raises(ValueError):
            DistanceReport(-1.0)
        with pytest.raises(ValueError):
            DistanceReport(POS_INF)

    def test_components_optional(self):
        assert DistanceReport(1.5).components is None


class TestW2:
    def test_identical_measures_distance_zero(self):
        m = DiscreteMeasure(np.array([0.0, 1.0]), np.array([0.5, 0.5]))
        assert w2(m, m) == 0.0

    def test_point_masses(self):
        assert w2(delta(0.0), delta(1.0)) == 1.0
        assert w2(delta(-2.0), delta(3.0)) == 5.0

    def test_translation_moves_distance_by_shift(self):
        # Dyadic atoms and a dyadic shift keep every quantile difference
        # exactly equal to the shift.
        atoms = np.arange(8) / 8.0
        m = DiscreteMeasure(atoms, np.full(8, 0.125))
        shifted = DiscreteMeasure(atoms + 0.5, np.full(8, 0.125))
        assert w2(m, shifted) == 0.5

    def test_two_atom_split_value(self):
        # Half the quantile grid moves distance 1, the other half stays:
        # the squared mean is 1/2.
        m = DiscreteMeasure(np.array([0.0, 1.0]), np.array([0.5, 0.5]))
        assert w2(m, delta(0.0), n_quantiles=4) == math.sqrt(0.5)

    def test_rejects_unnormalized(self):
        with pytest.raises(MetricDomainError):
            w2(delta(0.0, mass=2.0), delta(1.0))

    def test_rejects_infinite_atoms(self):
        with pytest.raises(MetricDomainError):
            w2(delta(POS_INF), delta(0.0))

    @given(probability_measures(max_atoms=8), probability_measures(max_atoms=8))
    def test_symmetry_exact(self, a, b):
        assert w2(a, b, n_quantiles=64) == w2(b, a, n_quantiles=64)


class TestDW2:
    def test_both_zero(self):
        r = d_w2(DiscreteMeasure.zero(), DiscreteMeasure.zero())
        assert r.value == 0.0
        assert r.components == {"quantile": 0.0, "mass": 0.0}

    def test_scaled_delta_at_origin_vs_zero(self):
        # The normalized shape sits at the origin, so only mass differs.
        r = d_w2(delta(0.0, mass=3.0), DiscreteMeasure.zero())
        assert r.value == 3.0
        assert r.components["quantile"] == 0.0

    def test_offset_delta_vs_zero(self):
        # Quantile term 2 (the location), mass term 1.
        r = d_w2(delta(2.0), DiscreteMeasure.zero())
        assert r.value == math.sqrt(5.0)
        assert r.components == {"quantile": 2.0, "mass": 1.0}

    def test_same_shape_different_mass(self):
        r = d_w2(delta(0.0, mass=3.0), delta(0.0, mass=2.0))
        assert r.value == 1.0
        assert r.components["quantile"] == 0.0

    def test_rejects_infinite_atoms(self):
        with pytest.raises(MetricDomainError):
            d_w2(delta(POS_INF, mass=2.0), delta(0.0))

    @given(signed_measures(max_atoms=6))
    def test_symmetry_exact(self, s):
        a, b = s.positive_part, s.negative_part
        assert d_w2(a, b, n_quantiles=64).value == d_w2(b, a, n_quantiles=64).value


class TestDS:
    def test_identity_of_indiscernibles(self):
        s = SignedMeasure(delta(1.0), delta(2.0))
        assert d_s(s, s).value == 0.0

    def test_sign_flip_of_unit_dipole(self):
        a = SignedMeasure(delta(1.0), delta(2.0))
        b = SignedMeasure(delta(2.0), delta(1.0))
        r = d_s(a, b)
        assert r.value == math.sqrt(2.0)
        assert r.components == {"plus": 1.0, "minus": 1.0}

    def test_dipole_vs_its_positive_part(self):
        # Positive parts agree; the negative part is compared against the
        # zero measure (quantile term 2, mass term 1).
        a = SignedMeasure(delta(1.0), delta(2.0))
        b = SignedMeasure(delta(1.0), DiscreteMeasure.zero())
        r = d_s(a, b)
        assert r.components["plus"] == 0.0
        assert r.value == math.sqrt(5.0)

    @given(signed_measures(max_atoms=4), signed_measures(max_atoms=4))
    def test_symmetry_exact(self, a, b):
        assert d_s(a, b, n_quantiles=64).value == d_s(b, a, n_quantiles=64).value

    def test_triangle_inequality_random_triples(self):
        rng = np.random.default_rng(12345)
        for _ in range(1000):
            measures = []
            for _k in range(3):
                locs = np.sort(rng.uniform(-5.0, 5.0, size=6))
                w = rng.uniform(0.1, 2.0, size=6)
                measures.append(
                    SignedMeasure(
                        DiscreteMeasure(locs[:3], w[:3]),
                        DiscreteMeasure(locs[3:], w[3:]),
                    )
                )
            a, b, c = measures
            dac = d_s(a, c, n_quantiles=256).value
            dab = d_s(a, b, n_quantiles=256).value
            dbc = d_s(b, c, n_quantiles=256).value
            assert dac <= dab + dbc + 1e-9


class TestTransformL2:
    def test_grid_mismatch_rejected(self):
        cfg = TransformConfig(n_quantiles=8)
        t8 = ScdtResult(CdtResult.zero(8), CdtResult.zero(8))
        t16 = ScdtResult(CdtResult.zero(16), CdtResult.zero(16))
        with pytest.raises(ValueError):
            transform_l2(t8, t16, cfg)
        with pytest.raises(ValueError):
            transform_l2(t16, t16, cfg)

    def test_rejects_infinite_samples(self):
        cfg = TransformConfig(n_quantiles=4)
        bad = ScdtResult(
            CdtResult(np.array([0.0, 0.0, 0.0, POS_INF]), 1.0), CdtResult.zero(4)
        )
        good = ScdtResult(CdtResult(np.zeros(4), 1.0), CdtResult.zero(4))
        with pytest.raises(MetricDomainError):
            transform_l2(bad, good, cfg)

    def test_mass_gap_only(self):
        cfg = TransformConfig(n_quantiles=4)
        t1 = ScdtResult(CdtResult(np.zeros(4), 3.0), CdtResult.zero(4))
        t2 = ScdtResult(CdtResult(np.zeros(4), 1.0), CdtResult.zero(4))
        assert transform_l2(t1, t2, cfg) == 2.0

    def test_reference_mass_weights_quantile_block(self):
        from scdt.measures import ReferenceMeasure

        cfg = TransformConfig(
            reference=ReferenceMeasure.uniform(0.0, 1.0, mass=2.0), n_quantiles=4
        )
        t1 = ScdtResult(CdtResult(np.ones(4), 1.0), CdtResult.zero(4))
        t2 = ScdtResult(CdtResult(np.zeros(4), 1.0), CdtResult.zero(4))
        assert transform_l2(t1, t2, cfg) == math.sqrt(2.0)

    @given(signed_measures(max_atoms=6), signed_measures(max_atoms=6))
    def test_matches_signed_distance_for_probability_reference(self, a, b):
        cfg = TransformConfig(n_quantiles=64)
        norm = transform_l2(scdt_forward(a, cfg), scdt_forward(b, cfg), cfg)
        dist = d_s(a, b, n_quantiles=64).value
        assert norm == pytest.approx(dist, rel=1e-12, abs=1e-15)

    def test_distance_between_dipoles_matches_hand_value(self):
        cfg = TransformConfig(n_quantiles=16)
        a = SignedMeasure(delta(1.0), delta(2.0))
        b = SignedMeasure(delta(2.0), delta(1.0))
        norm = transform_l2(scdt_forward(a, cfg), scdt_forward(b, cfg), cfg)
        assert norm == pytest.approx(math.sqrt(2.0), rel=1e-15)
