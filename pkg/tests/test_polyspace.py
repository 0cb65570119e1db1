"""Tests for the polyanalytic basis, kernels, projections, and degree checks."""

import math

import numpy as np
import pytest

from polyberg.errors import InvalidArgumentError
from polyberg.halfplane import make_grid
from polyberg.laguerre import laguerre_poly
from polyberg.polyspace import (BASIS_NORM, KernelSpec, PolyField, basis_e,
                                basis_e_normalized, dbar_power,
                                kernel_basis_sum, kernel_poly,
                                kernel_rodrigues_raw, kernel_true,
                                kernel_wavelet, omega, polyanalytic_degree,
                                project_true, psi_beta)
from polyberg.transforms import RPlusCoeffs, true_ber


def omega_series_oracle(n, z):
    """Independent monomial-expansion value of int_0^inf t l_n^0(2t) e^{izt} dt."""
    sigma0 = -1j * z + 1.0  # l_n^0(2t) = e^{-t} L_n(2t); decay merges into sigma0
    total = 0.0
    for j in range(n + 1):
        cj = (-1.0) ** j * math.comb(n, j) * 2.0 ** j / math.factorial(j)
        total += cj * math.factorial(j + 1) * sigma0 ** (-(j + 2))
    return total


class TestBasis:
    def test_matches_true_ber_of_modes(self):
        z = 0.4 + 1.3j
        for n in range(3):
            for m in range(3):
                fhat = RPlusCoeffs([0.0] * m + [1.0])
                assert basis_e(n, m, z) == pytest.approx(true_ber(fhat, n, z),
                                                         rel=1e-12)

    def test_normalization_factor(self):
        z = -0.2 + 0.8j
        val = basis_e_normalized(1, 3, z)
        assert val == pytest.approx(basis_e(1, 3, z) / math.sqrt(math.pi * 4.0),
                                    rel=1e-12)

    def test_rejects_negative_indices(self):
        with pytest.raises(ValueError):
            basis_e(-1, 0, 1j)


class TestPsiBeta:
    def test_frozen_values(self):
        # Gamma(beta+n)/n! sigma^{-beta-n} (sigma-1)^n at z=i, beta=2
        assert psi_beta(0, 2.0, 1j) == pytest.approx(4.0 / 9.0)
        assert psi_beta(1, 2.0, 1j) == pytest.approx(8.0 / 27.0)

    def test_series_oracle(self):
        # independent route: expand L_n^{beta-1} over monomials, integrate
        # int t^{beta-1+j} ... term by term with Gamma closed forms
        beta, n, z = 2.5, 2, 0.3 + 1.1j
        sigma = 0.5 - 1j * z
        total = 0.0
        for j in range(n + 1):
            cj = (-1.0) ** j / math.factorial(j) \
                * math.gamma(n + beta) / (math.gamma(beta + j) * math.factorial(n - j))
            total += cj * math.gamma(beta + j) * sigma ** (-(beta + j))
        assert psi_beta(n, beta, z) == pytest.approx(total, rel=1e-12)

    def test_rejects_small_beta(self):
        with pytest.raises(ValueError):
            psi_beta(0, 1.0, 1j)


class TestOmega:
    @pytest.mark.parametrize("n", range(6))
    def test_against_series_oracle(self, n):
        for z in [0.3 + 0.8j, -1.2 + 2.5j, 2.0 + 0.4j]:
            assert omega(n, z) == pytest.approx(omega_series_oracle(n, z),
                                                rel=1e-10)

    def test_order0_closed_form(self):
        z = 0.6 + 1.1j
        assert omega(0, z) == pytest.approx(-((z + 1j) ** -2.0), rel=1e-12)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            omega(-1, 1j)


class TestKernels:
    def test_k0_closed_form(self):
        z, w = 0.3 + 0.9j, -0.2 + 1.4j
        want = -1.0 / math.pi * (z - np.conj(w)) ** -2.0
        assert kernel_basis_sum(0, z, w, M=64) == pytest.approx(want, abs=1e-8)

    def test_hermitian_symmetry(self):
        z, w = 0.5 + 0.7j, -0.4 + 1.1j
        for n in range(3):
            assert kernel_basis_sum(n, z, w, M=48) == pytest.approx(
                np.conj(kernel_basis_sum(n, w, z, M=48)), rel=1e-10)

    def test_rodrigues_matches_basis_sum(self):
        for n in range(4):
            for z, w in [(0.1 + 0.6j, 0.9 + 0.7j), (-0.8 + 1.3j, -0.4 + 1.8j)]:
                a = kernel_true(KernelSpec(n, "basis_sum", 96), z, w)
                b = kernel_true(KernelSpec(n, "rodrigues"), z, w)
                assert b == pytest.approx(a, rel=1e-10)

    def test_poly_kernel_is_partial_sum(self):
        z, w = 0.2 + 1.0j, 0.5 + 0.8j
        want = sum(kernel_basis_sum(k, z, w, M=48) for k in range(3))
        assert kernel_poly(3, z, w, M=48) == pytest.approx(want, rel=1e-12)

    def test_wavelet_kernel_scaling(self):
        z, w = 0.2 + 1.5j, -0.1 + 0.5j
        want = (z.imag / w.imag) * kernel_basis_sum(1, z, w, M=48)
        assert kernel_wavelet(1, z, w, M=48) == pytest.approx(want, rel=1e-12)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            KernelSpec(0, "fft")
        with pytest.raises(ValueError):
            KernelSpec(-1)
        with pytest.raises(ValueError):
            kernel_poly(0, 1j, 1j)

    def test_rodrigues_raw_is_eta_free_in_zeta(self):
        # the raw Rodrigues form depends on (z, w) only through zeta = (z-u)/eta
        n = 2
        u, eta = 0.4, 1.7
        zeta = 0.3 + 0.9j
        a = kernel_rodrigues_raw(n, u + eta * zeta, complex(u, eta))
        b = kernel_rodrigues_raw(n, zeta, 1j)
        assert a == pytest.approx(b, rel=1e-12)


@pytest.fixture(scope="module")
def small_grid():
    return make_grid(40.0, 256, 1e-4, 200.0, 220)


class TestProjection:
    def test_coefficient_projection(self, small_grid):
        F = PolyField(coeffs=[[1.0], [1.0]])
        c = project_true(F, 0, grid=small_grid, M=3)
        assert c[0] == pytest.approx(math.sqrt(math.pi), rel=0.02)
        assert abs(c[1]) < 0.05 and abs(c[2]) < 0.05

    def test_kernel_projection_reproduces(self, small_grid):
        F = PolyField(coeffs=[[1.0, 0.3]])
        z0 = 0.3 + 1.1j
        val = project_true(F, 0, grid=small_grid, method="kernel", probe=z0)
        assert val == pytest.approx(F(np.array([z0]))[0], rel=0.02)

    def test_kernel_method_needs_probe(self, small_grid):
        F = PolyField(coeffs=[[1.0]])
        with pytest.raises(ValueError):
            project_true(F, 0, grid=small_grid, method="kernel")
        with pytest.raises(ValueError):
            project_true(F, 0, grid=small_grid, method="monte-carlo")

    def test_out_of_range_channel(self, small_grid):
        F = PolyField(coeffs=[[1.0]])
        with pytest.raises(ValueError):
            project_true(F, 2, grid=small_grid)


class TestPolyField:
    def test_norm_sq(self):
        F = PolyField(coeffs=[[1.0, 2.0], [0.0, 1.0j]])
        want = math.pi * (1.0 + 4.0 * 2.0 + 1.0 * 2.0)
        assert F.norm_sq == pytest.approx(want, rel=1e-12)

    def test_evaluation_matches_basis(self):
        F = PolyField(coeffs=[[0.5, -0.2], [1.0j, 0.0]])
        z = 0.7 + 0.9j
        want = 0.5 * basis_e(0, 0, z) - 0.2 * basis_e(0, 1, z) + 1j * basis_e(1, 0, z)
        assert F(z) == pytest.approx(want, rel=1e-12)

    def test_json_roundtrip(self):
        F = PolyField(coeffs=[[1.0 + 2.0j], [0.5, 0.0][:1]])
        back = PolyField.from_json(F.to_json())
        assert np.allclose(back.coeffs, F.coeffs)

    def test_closure_form(self):
        F = PolyField(closure=lambda z: np.conj(z), order=2)
        assert F(1 + 1j) == 1 - 1j
        with pytest.raises(ValueError):
            _ = F.norm_sq

    def test_validation(self):
        with pytest.raises(ValueError):
            PolyField()
        with pytest.raises(ValueError):
            PolyField(coeffs=[[np.inf]])
        with pytest.raises(ValueError):
            PolyField(closure=lambda z: z)


class TestWirtinger:
    def test_dbar_of_antiholomorphic(self):
        F = lambda z: np.conj(z)
        assert dbar_power(F, 0.3 + 1.0j, 1) == pytest.approx(1.0, abs=1e-8)

    def test_dbar_of_holomorphic_vanishes(self):
        F = lambda z: z ** 3
        assert abs(dbar_power(F, 0.5 + 1.5j, 1)) < 1e-8

    def test_second_power_of_s_squared(self):
        # dbar^2 s^2 = (1/4)(dx + i ds)^2 s^2 = (1/4)(i^2 * 2) = -1/2
        F = lambda z: np.imag(z) ** 2 + 0.0j
        assert dbar_power(F, 0.0 + 2.0j, 2) == pytest.approx(-0.5, abs=1e-6)

    def test_stencil_boundary_guard(self):
        F = lambda z: z
        with pytest.raises(ValueError, match="half-plane"):
            dbar_power(F, 0.0 + 0.0005j, 2, h=1e-3)

    def test_tiny_step_warns(self):
        F = lambda z: z
        with pytest.warns(RuntimeWarning):
            dbar_power(F, 1j, 1, h=1e-7)

    @pytest.mark.parametrize("n", range(3))
    def test_basis_degree(self, n):
        F = PolyField(coeffs=[[0.0]] * n + [[1.0]])
        probes = [0.2 + 0.9j, -0.5 + 1.4j, 0.7 + 0.6j]
        assert polyanalytic_degree(F, probes) == n + 1

    def test_degree_sentinel_for_non_polyanalytic(self):
        F = lambda z: np.exp(np.conj(z) * 1.0)
        probes = [0.1 + 1.0j, -0.3 + 0.8j]
        assert polyanalytic_degree(F, probes, j_max=3) is None
