"""Structure of the polyanalytic Bergman spaces on the upper half-plane.

Provides the orthogonal rational basis e_{n,m}, the profile image Omega_n,
reproducing kernels of the true spaces and their direct sums, orthogonal
projections, and finite-difference verification of polyanalyticity degree.

The normative kernel is the basis sum over the normalized family
e_{n,m} / sqrt(pi (m+1)); the Rodrigues-operator closed form is kept as a
secondary method whose constant is calibrated against the basis sum.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .halfplane import default_grid, inner_u
from .transforms import _as_z, _sigma, ber_mode

__all__ = [
    "BASIS_NORM",
    "PolyField",
    "KernelSpec",
    "basis_e",
    "basis_e_normalized",
    "psi_beta",
    "omega",
    "kernel_true",
    "kernel_poly",
    "kernel_wavelet",
    "project_true",
    "dbar_power",
    "polyanalytic_degree",
]

# ||e_{n,m}||^2 = BASIS_NORM * (m+1) for every true-space index n
# (unitarity constant of the transforms, measured as pi in calibration)
BASIS_NORM = math.pi


def basis_e(n, m, z):
    """Basis function e_{n,m}(z), the order-n transform of the m-th Laguerre mode.

    e_{n,m}(z) = sum_j C(n,j) (2 i s)^j ber_mode(m, z, j) / j!.
    """
    if n < 0 or m < 0:
        raise InvalidArgumentError("basis indices must be nonnegative")
    zc = _as_z(z)
    s = np.imag(zc)
    total = 0.0
    for j in range(n + 1):
        coef = math.comb(n, j) / math.factorial(j)
        total = total + coef * (2j * s) ** j * ber_mode(m, zc, j)
    return total


def basis_e_normalized(n, m, z):
    """Unit-norm basis function e_{n,m} / sqrt(pi (m+1))."""
    return basis_e(n, m, z) / math.sqrt(BASIS_NORM * (m + 1))


def psi_beta(n, beta, z):
    """Weighted-Bergman rational basis: Ber_{beta/2} of the Laguerre mode l_n^{beta-1}.

    Closed form Gamma(beta+n)/n! sigma^{-beta-n} (sigma-1)^n with
    sigma = 1/2 - iz; requires beta > 1.
    """
    if beta <= 1:
        raise InvalidArgumentError(f"beta must be > 1, got {beta}")
    if n < 0:
        raise InvalidArgumentError("mode index must be nonnegative")
    sigma = _sigma(z)
    const = math.exp(math.lgamma(beta + n) - math.lgamma(n + 1))
    return const * sigma ** (-(beta + n)) * (sigma - 1.0) ** n


def omega(n, z):
    """Bergman image of the n-th analyzing profile, in closed form.

    omega(n, z) = int_0^inf t l_n^0(2t) e^{izt} dt
                = -[(z-i)^n - 2 n i (z-i)^{n-1}] (z+i)^{-n-2}.
    """
    if n < 0:
        raise InvalidArgumentError("index must be nonnegative")
    zc = _as_z(z)
    a = zc - 1j
    b = zc + 1j
    if n == 0:
        return -b ** -2.0
    return -(a ** n - 2j * n * a ** (n - 1)) * b ** (-n - 2.0)


def _omega_deriv(n, zeta, k):
    """k-th derivative of omega(n, .), via Leibniz on (zeta-i)^p (zeta+i)^{-n-2}."""

    def term(p, q, k):
        # d^k [(zeta-i)^p (zeta+i)^q], q < 0
        total = 0.0
        for i in range(k + 1):
            j = k - i
            if i > p:
                continue
            ca = math.perm(p, i)
            cb = math.prod(range(-q, -q + j)) * (-1.0) ** j if j else 1.0
            total = total + math.comb(k, i) * ca * cb \
                * (zeta - 1j) ** (p - i) * (zeta + 1j) ** (q - j)
        return total

    q = -n - 2
    out = -term(n, q, k)
    if n >= 1:
        out = out + 2j * n * term(n - 1, q, k)
    return out


def kernel_rodrigues_raw(n, z, w):
    """Uncalibrated Rodrigues-form kernel (d/dzeta)^n [s_zeta^n omega_n(zeta)].

    zeta = (z - u)/eta for w = u + i eta; the measured constant gamma_n and
    the eta^-2 prefactor are supplied by the calibration report.
    """
    zc = _as_z(z)
    wc = _as_z(w)
    u, eta = np.real(wc), np.imag(wc)
    zeta = (zc - u) / eta
    s = np.imag(zeta)
    total = 0.0
    for k in range(n + 1):
        coef = math.comb(n, k) * (2j) ** (k - n) * math.factorial(n) / math.factorial(k)
        total = total + coef * s ** k * _omega_deriv(n, zeta, k)
    return total


def kernel_basis_sum(n, z, w, M=64):
    """Reproducing kernel of the order-n true space by the normalized basis sum."""
    if M < 8:
        raise InvalidArgumentError(f"basis cutoff must be >= 8, got {M}")
    total = 0.0
    for m in range(M):
        total = total + basis_e(n, m, z) * np.conj(basis_e(n, m, w)) / (BASIS_NORM * (m + 1))
    return total


@dataclass(frozen=True)
class KernelSpec:
    """Which true space and which evaluation method a kernel call uses."""

    n: int
    method: str = "basis_sum"
    M: int = 64

    def __post_init__(self):
        if self.n < 0:
            raise InvalidArgumentError("space index must be nonnegative")
        if self.method not in ("basis_sum", "rodrigues"):
            raise InvalidArgumentError(f"unknown kernel method {self.method!r}")
        if self.method == "basis_sum" and self.M < 8:
            raise InvalidArgumentError("basis_sum needs M >= 8")


def kernel_true(spec, z, w, calibration=None):
    """Reproducing kernel K^n(z, w) of the order-n true space."""
    if isinstance(spec, int):
        spec = KernelSpec(spec)
    if spec.method == "basis_sum":
        return kernel_basis_sum(spec.n, z, w, M=spec.M)
    if calibration is None:
        from .calibration import get_calibration
        calibration = get_calibration()
    eta = np.imag(_as_z(w))
    gamma = calibration.kernel_gamma(spec.n)
    p = calibration.kernel_eta_exponent
    return gamma * eta ** p * kernel_rodrigues_raw(spec.n, z, w)


def kernel_poly(n, z, w, M=64, method="basis_sum"):
    """Reproducing kernel of the order-n polyanalytic space: sum of true kernels."""
    if n < 1:
        raise InvalidArgumentError(f"polyanalytic order must be >= 1, got {n}")
    total = 0.0
    for k in range(n):
        total = total + kernel_true(KernelSpec(k, method, M), z, w)
    return total


def kernel_wavelet(n, z, w, M=64):
    """Wavelet-space kernel k^n(z, w) = (s/eta) K^n(z, w)."""
    s = np.imag(_as_z(z))
    eta = np.imag(_as_z(w))
    return (s / eta) * kernel_true(KernelSpec(n, "basis_sum", M), z, w)


# ---------------------------------------------------------------------------
# fields


class PolyField:
    """A polyanalytic field, either as basis coefficients or as a closure.

    In coefficient form F = sum_{k<order, m<modes} c[k][m] e_{k,m} with the
    raw (unnormalized) basis.
    """

    def __init__(self, coeffs=None, closure=None, order=None):
        if (coeffs is None) == (closure is None):
            raise InvalidArgumentError("provide exactly one of coeffs / closure")
        if coeffs is not None:
            c = np.atleast_2d(np.asarray(coeffs, dtype=complex))
            if not np.all(np.isfinite(c)):
                raise InvalidArgumentError("coefficients must be finite")
            self.coeffs = c
            self.order = c.shape[0] if order is None else int(order)
            if self.order < c.shape[0]:
                raise InvalidArgumentError("declared order below coefficient rows")
        else:
            if order is None:
                raise InvalidArgumentError("closure form needs a declared order")
            self.coeffs = None
            self.order = int(order)
            self._closure = closure

    @property
    def modes(self):
        return None if self.coeffs is None else self.coeffs.shape[1]

    @property
    def norm_sq(self):
        """Exact squared dxds-norm in coefficient form."""
        if self.coeffs is None:
            raise InvalidArgumentError("norm_sq requires coefficient form")
        m = np.arange(self.coeffs.shape[1])
        return float(np.sum(np.abs(self.coeffs) ** 2 * BASIS_NORM * (m + 1)))

    def __call__(self, z):
        if self.coeffs is None:
            return self._closure(z)
        zc = _as_z(z)
        total = np.zeros(np.shape(zc), dtype=complex) if not np.isscalar(zc) else 0.0
        for k in range(self.coeffs.shape[0]):
            for m in range(self.coeffs.shape[1]):
                c = self.coeffs[k, m]
                if c != 0:
                    total = total + c * basis_e(k, m, zc)
        return total

    def to_json(self):
        if self.coeffs is None:
            raise InvalidArgumentError("only coefficient form serializes")
        return {
            "order": self.order,
            "modes": self.modes,
            "coeffs": [[[float(c.real), float(c.imag)] for c in row]
                       for row in self.coeffs],
        }

    @classmethod
    def from_json(cls, d):
        c = [[complex(re, im) for re, im in row] for row in d["coeffs"]]
        return cls(coeffs=c, order=d["order"])


def project_true(F, k, grid=None, M=16, method="coefficients", probe=None):
    """Coefficients of the order-k true component of F, in normalized coordinates.

    c_m = <F, e_{k,m}/sqrt(pi(m+1))> over the grid.  With
    method='kernel' the component is instead evaluated pointwise at ``probe``
    through the reproducing kernel.
    """
    if isinstance(F, PolyField) and F.coeffs is not None and k >= F.order:
        raise InvalidArgumentError(f"channel {k} out of range for order {F.order}")
    if grid is None:
        grid = default_grid()
    if method == "coefficients":
        out = np.zeros(M, dtype=complex)
        for m in range(M):
            em = _normalized_basis_field(k, m)
            out[m] = inner_u(F, em, grid)
        return out
    if method == "kernel":
        if probe is None:
            raise InvalidArgumentError("kernel method needs a probe point")
        def Kz(w):
            # second slot of the inner product must be K(., probe)
            return kernel_basis_sum(k, w, probe, M=max(M, 64))
        return inner_u(F, Kz, grid)
    raise InvalidArgumentError(f"unknown projection method {method!r}")


def _normalized_basis_field(n, m):
    def field(z):
        return basis_e_normalized(n, m, z)
    return field


# ---------------------------------------------------------------------------
# Wirtinger finite differences


def dbar_power(F, z, j, h=1e-3):
    """Finite-difference estimate of the j-th anti-holomorphic Wirtinger derivative.

    Samples F on a square patch with spacing h, fits a bivariate Taylor
    polynomial by least squares, and reads off
    (d/dzbar)^j = 2^{-j} sum_r C(j,r) i^{j-r} (d/dx)^r (d/ds)^{j-r}
    from the fitted coefficients.  The wide patch keeps both the truncation
    error and the roundoff amplification of high orders far below the
    plain (2j+1)-point stencil.
    """
    if j < 1:
        raise InvalidArgumentError(f"derivative order must be >= 1, got {j}")
    if h <= 0:
        raise InvalidArgumentError("step must be positive")
    if h < 1e-6:
        warnings.warn("step below 1e-6: finite differences are ill-conditioned",
                      RuntimeWarning, stacklevel=2)
    zc = _as_z(z)
    s = np.imag(zc)
    half = max(3 * j, 12)  # patch half-width in steps
    degree = j + 6
    if s - half * h <= 0:
        raise InvalidArgumentError(
            f"stencil leaves the upper half-plane (s={s}, j={j}, h={h}, "
            f"patch radius {half * h})")

    offs = np.arange(-half, half + 1)
    ox, os_ = np.meshgrid(offs, offs, indexing="ij")
    pts = zc + h * (ox + 1j * os_)
    vals = np.asarray(F(pts.ravel()), dtype=complex)

    # design matrix over normalized coordinates u, v in [-1, 1]
    scale = half * h
    u = (ox.ravel() * h) / scale
    v = (os_.ravel() * h) / scale
    cols = []
    index = {}
    for p in range(degree + 1):
        for q in range(degree + 1 - p):
            index[(p, q)] = len(cols)
            cols.append(u ** p * v ** q)
    A = np.stack(cols, axis=1)
    coef, *_ = np.linalg.lstsq(A, vals, rcond=None)

    total = 0.0
    for r in range(j + 1):
        a = coef[index[(r, j - r)]]
        total = total + math.comb(j, r) * (1j) ** (j - r) \
            * math.factorial(r) * math.factorial(j - r) * a
    return 2.0 ** (-j) * total / scale ** j


def polyanalytic_degree(F, probes, tol=1e-4, h=1e-3, j_max=6):
    """Smallest j with max |dbar^j F| / max |F| below tol over the probes.

    Returns None when no j <= j_max qualifies.
    """
    probes = [(_as_z(p)) for p in probes]
    scale = max(abs(complex(np.asarray(F(np.array([p])))[0])) for p in probes)
    if scale == 0:
        return 1
    for j in range(1, j_max + 1):
        worst = max(abs(dbar_power(F, p, j, h)) for p in probes)
        if worst / scale < tol:
            return j
    return None
