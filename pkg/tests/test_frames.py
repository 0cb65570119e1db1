"""Tests for sampling sums, frame estimates, density condition, and h."""

import math

import numpy as np
import pytest

from polyberg.errors import (InvalidArgumentError, NumericOverflowError,
                             PoleProximityError)
from polyberg.frames import (ConditionReport, FrameReport, frame_ratio,
                             h_checks, h_eval, necessary_condition,
                             sampling_sum)
from polyberg.halfplane import make_lattice
from polyberg.polyspace import PolyField


class TestSamplingSum:
    def test_zero_field(self):
        lat = make_lattice(2, 1, (-2, 2), (-3, 3))
        F = PolyField(coeffs=[[0.0]])
        assert sampling_sum(F, lat) == 0.0

    def test_single_point_value(self):
        # lattice {i}, F = e_{0,0}: s^2 |e_{0,0}(i)|^2 = (4/9)^2
        lat = make_lattice(2, 1, (0, 0), (0, 0))
        F = PolyField(coeffs=[[1.0]])
        assert sampling_sum(F, lat) == pytest.approx((4.0 / 9.0) ** 2, rel=1e-12)

    def test_matches_loop_oracle(self):
        lat = make_lattice(2, 1, (-2, 2), (-8, 8))
        F = PolyField(coeffs=[[0.7, -0.2j], [0.1, 0.4]])
        acc = 0.0
        for z in lat.points:
            acc += z.imag ** 2 * abs(F(np.array([z]))[0]) ** 2
        assert sampling_sum(F, lat) == pytest.approx(acc, rel=1e-12)

    def test_absolute_homogeneity(self):
        lat = make_lattice(2, 1, (-1, 1), (-2, 2))
        F = PolyField(coeffs=[[0.5, 0.3j]])
        G = PolyField(coeffs=[[(2.0 - 1.0j) * c for c in [0.5, 0.3j]]])
        assert sampling_sum(G, lat) == pytest.approx(
            abs(2.0 - 1.0j) ** 2 * sampling_sum(F, lat), rel=1e-12)

    def test_nonfinite_names_index(self):
        lat = make_lattice(2, 1, (0, 1), (0, 0))

        def bad(z):
            out = np.ones_like(z, dtype=complex)
            out[1] = np.nan
            return out

        with pytest.raises(NumericOverflowError, match=r"m=1, k=0"):
            sampling_sum(PolyField(closure=bad, order=1), lat)


class TestFrameRatio:
    def test_single_element_dictionary(self):
        lat = make_lattice(2, 1, (-1, 1), (-3, 3))
        rep = frame_ratio(0, lat, M=1, trials=1, seed=5)
        assert rep.lower_est == rep.upper_est == rep.ratio
        assert rep.dictionary_size == 1 and rep.seed == 5
        assert rep.density_value == pytest.approx(math.log(2))

    def test_monotone_under_refinement(self):
        coarse = make_lattice(2, 1, (-1, 1), (-3, 3))
        fine = make_lattice(2, 1, (-2, 2), (-6, 6))
        a = frame_ratio(0, coarse, M=4, trials=8, seed=2)
        b = frame_ratio(0, fine, M=4, trials=8, seed=2)
        assert b.lower_est >= a.lower_est
        assert b.upper_est >= a.upper_est

    def test_deterministic_given_seed(self):
        lat = make_lattice(2, 1, (-1, 1), (-4, 4))
        a = frame_ratio(1, lat, M=4, trials=5, seed=9)
        b = frame_ratio(1, lat, M=4, trials=5, seed=9)
        assert a == b

    def test_poly_variant_runs(self):
        lat = make_lattice(2, 1, (-1, 1), (-4, 4))
        rep = frame_ratio(1, lat, M=4, trials=3, seed=1, variant="poly")
        assert rep.lower_est > 0

    def test_validation(self):
        lat = make_lattice(2, 1, (0, 0), (0, 0))
        with pytest.raises(ValueError):
            frame_ratio(0, lat, trials=0)
        with pytest.raises(ValueError):
            frame_ratio(0, lat, variant="mixed")


class TestNecessaryCondition:
    def test_flip_n0(self):
        assert necessary_condition(2, 9, 0).satisfied
        assert not necessary_condition(2, 10, 0).satisfied

    def test_flip_n1(self):
        assert necessary_condition(2, 18, 1).satisfied
        assert not necessary_condition(2, 19, 1).satisfied

    def test_weighted_threshold(self):
        rep = necessary_condition(2, 3, 0, alpha=1.0)
        assert rep.threshold == pytest.approx(math.pi)

    def test_margin(self):
        rep = necessary_condition(2, 9, 0)
        assert rep.margin == pytest.approx(rep.threshold - 9 * math.log(2))

    def test_validation(self):
        with pytest.raises(ValueError):
            necessary_condition(1.0, 1, 0)
        with pytest.raises(ValueError):
            necessary_condition(2.0, 0.0, 0)

    def test_report_consistency_guard(self):
        with pytest.raises(ValueError):
            ConditionReport(value=1.0, threshold=2.0, satisfied=False, margin=1.0)


class TestH:
    def test_vanishes_at_origin_point(self):
        assert h_eval(1j, 2, 1, 60) == 0.0

    def test_vanishes_on_interior_lattice(self):
        for m in range(-8, 9):
            for k in range(-4, 5):
                z = 2.0 ** m * (k + 1j)
                assert abs(h_eval(z, 2, 1, 60)) < 1e-10

    def test_off_lattice_value_stable(self):
        v1 = h_eval(0.7j, 2, 1, 200)
        v2 = h_eval(0.7j, 2, 1, 250)
        assert v1 != 0
        assert abs(v1 - v2) < 1e-8 * abs(v1)

    def test_quasi_periodicity_and_growth(self):
        rep = h_checks(2, 1, 200)
        assert rep["quasi_periodicity_residual"] < 1e-6
        assert rep["slope_rel_error"] < 0.05
        assert rep["predicted_slope"] == pytest.approx(-2 * math.pi / math.log(2))

    def test_residual_invariant_under_probe_rescaling(self):
        probes = [0.31 + 0.62j, -0.4 + 1.7j, 0.05 + 0.9j]
        r1 = h_checks(2, 1, 200, probes=probes)
        r2 = h_checks(2, 1, 200, probes=[2 * p for p in probes])
        assert r1["quasi_periodicity_residual"] < 1e-6
        assert r2["quasi_periodicity_residual"] < 1e-6

    def test_validation(self):
        with pytest.raises(ValueError):
            h_eval(1j, 2, 1, trunc=4)
        with pytest.raises(ValueError):
            h_eval(1j, 0.5, 1)


class TestFrameReportType:
    def test_json_fields(self):
        rep = FrameReport(a=2.0, b=1.0, n=0, lower_est=0.1, upper_est=0.2,
                          ratio=0.15, density_value=math.log(2),
                          threshold=2 * math.pi, dictionary_size=10, seed=0)
        d = rep.to_json()
        assert set(d) == {"a", "b", "n", "lower_est", "upper_est", "ratio",
                          "density_value", "threshold", "dictionary_size", "seed"}

    def test_ordering_guard(self):
        with pytest.raises(ValueError):
            FrameReport(a=2, b=1, n=0, lower_est=0.3, upper_est=0.2, ratio=0.25,
                        density_value=0.7, threshold=6.28, dictionary_size=1, seed=0)
