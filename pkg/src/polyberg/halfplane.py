"""Geometry and quadrature on the upper half-plane and on the positive axis.

Grids are rectangular truncations of U = {x + is : s > 0}: uniform in x,
log-uniform in s, midpoint rule in both directions.  Inner products reduce
over nodes with numpy's pairwise summation, so serial and vectorised runs
agree bit-for-bit.
"""

import json
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.laguerre import laggauss

from .errors import InvalidArgumentError, NumericOverflowError

__all__ = [
    "Measure",
    "HalfPlanePoint",
    "HalfPlaneGrid",
    "Lattice",
    "make_grid",
    "default_grid",
    "inner_u",
    "norm_sq_u",
    "inner_rplus",
    "distances",
    "make_lattice",
]

# Default verification grid.  Fields here are rational with |F|^2 = O(|z|^-4)
# but do not vanish on the boundary s -> 0, so s_min must sit well below the
# acceptance tolerances; with these settings the worst norm bias over the
# basis range used in verification (n <= 3, m <= 7) measures ~4e-3 relative.
DEFAULT_X = 80.0
DEFAULT_NX = 1024
DEFAULT_SMIN = 1e-5
DEFAULT_SMAX = 1e3
DEFAULT_NS = 600

GAUSS_LAGUERRE_DEFAULT_ORDER = 128

_gl_cache = {}


def gauss_laguerre(order):
    """Cached Gauss-Laguerre nodes/weights for weight e^{-u} on (0, inf)."""
    if order not in _gl_cache:
        _gl_cache[order] = laggauss(order)
    return _gl_cache[order]


@dataclass(frozen=True)
class Measure:
    """Measure tag for half-plane integrals.

    kind 'plain' is dxds, 'affine' is s^-2 dxds, 'weighted' is s^alpha dxds.
    """

    kind: str
    alpha: float = 0.0

    def __post_init__(self):
        if self.kind not in ("plain", "affine", "weighted"):
            raise InvalidArgumentError(f"unknown measure kind {self.kind!r}")

    def density(self, s):
        if self.kind == "plain":
            return np.ones_like(s)
        if self.kind == "affine":
            return s ** -2.0
        return s ** self.alpha

    def to_json(self):
        d = {"kind": self.kind}
        if self.kind == "weighted":
            d["alpha"] = self.alpha
        return d


PLAIN = Measure("plain")
AFFINE = Measure("affine")


@dataclass(frozen=True)
class HalfPlanePoint:
    """Point z = x + i s of the upper half-plane (s > 0)."""

    x: float
    s: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.s)):
            raise InvalidArgumentError("coordinates must be finite")
        if self.s <= 0:
            raise InvalidArgumentError(f"s must be positive, got {self.s}")

    @property
    def z(self):
        return complex(self.x, self.s)

    @classmethod
    def from_complex(cls, z):
        return cls(float(np.real(z)), float(np.imag(z)))


class HalfPlaneGrid:
    """Quadrature grid on a rectangle [-X, X] x [s_min, s_max] of U.

    Nodes are ordered x-major (all s for the first x, then the next x).
    ``weights`` already include the measure density at the node.
    """

    def __init__(self, xs, ss, weights, measure, x_range, s_range):
        self.xs = np.asarray(xs, dtype=float)
        self.ss = np.asarray(ss, dtype=float)
        self.weights = np.asarray(weights, dtype=float)
        if not (len(self.xs) == len(self.ss) == len(self.weights)):
            raise InvalidArgumentError("node/weight count mismatch")
        if np.any(self.weights <= 0):
            raise InvalidArgumentError("weights must be positive")
        if np.any(self.ss <= 0):
            raise InvalidArgumentError("grid nodes must have s > 0")
        self.measure = measure
        self.x_range = tuple(x_range)
        self.s_range = tuple(s_range)

    @property
    def zs(self):
        return self.xs + 1j * self.ss

    def __len__(self):
        return len(self.xs)

    def to_json(self):
        return {
            "measure": self.measure.to_json(),
            "x_range": list(self.x_range),
            "s_range": list(self.s_range),
            "nodes": [[float(x), float(s)] for x, s in zip(self.xs, self.ss)],
            "weights": [float(w) for w in self.weights],
        }

    @classmethod
    def from_json(cls, d):
        m = d["measure"]
        measure = Measure(m["kind"], m.get("alpha", 0.0))
        nodes = np.asarray(d["nodes"], dtype=float)
        return cls(nodes[:, 0], nodes[:, 1], d["weights"], measure,
                   d["x_range"], d["s_range"])

    def dump(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh)


def make_grid(X, n_x, s_min, s_max, n_s, measure=PLAIN):
    """Midpoint-rule grid: uniform x in [-X, X], log-uniform s in [s_min, s_max].

    Weight of a node is its cell area (dx times the exact s-cell width)
    times the measure density at the node.
    """
    if X <= 0:
        raise InvalidArgumentError(f"X must be positive, got {X}")
    if not (0 < s_min < s_max):
        raise InvalidArgumentError(f"need 0 < s_min < s_max, got [{s_min}, {s_max}]")
    if n_x < 2 or n_s < 2:
        raise InvalidArgumentError("n_x and n_s must be at least 2")
    dx = 2.0 * X / n_x
    x_nodes = -X + (np.arange(n_x) + 0.5) * dx
    du = (math.log(s_max) - math.log(s_min)) / n_s
    u_edges = math.log(s_min) + np.arange(n_s + 1) * du
    s_nodes = np.exp(u_edges[:-1] + du / 2.0)
    ds_cells = np.exp(u_edges[1:]) - np.exp(u_edges[:-1])

    xs = np.repeat(x_nodes, n_s)
    ss = np.tile(s_nodes, n_x)
    cell = dx * np.tile(ds_cells, n_x)
    weights = cell * measure.density(ss)
    return HalfPlaneGrid(xs, ss, weights, measure, (-X, X), (s_min, s_max))


_default_grids = {}


def default_grid(measure=PLAIN):
    """The default verification grid (cached per measure)."""
    key = (measure.kind, measure.alpha)
    if key not in _default_grids:
        _default_grids[key] = make_grid(DEFAULT_X, DEFAULT_NX, DEFAULT_SMIN,
                                        DEFAULT_SMAX, DEFAULT_NS, measure)
    return _default_grids[key]


def _evaluate(F, z):
    """Evaluate a field on an array of complex points."""
    vals = F(z)
    return np.asarray(vals, dtype=complex)


def inner_u(F, G, grid):
    """Weighted half-plane inner product sum_j w_j F(z_j) conj(G(z_j)).

    F and G are callables taking a complex ndarray.  Raises
    NumericOverflowError naming the first non-finite node.
    """
    z = grid.zs
    fv = _evaluate(F, z)
    gv = _evaluate(G, z)
    with np.errstate(invalid="ignore", over="ignore"):
        prod = grid.weights * fv * np.conj(gv)
    bad = ~np.isfinite(prod)
    if np.any(bad):
        j = int(np.argmax(bad))
        raise NumericOverflowError(
            f"non-finite sample at node {j} (x={grid.xs[j]}, s={grid.ss[j]})")
    # numpy reduces with a fixed pairwise tree: reproducible ordering
    return complex(np.sum(prod))


def norm_sq_u(F, grid):
    """Real squared norm of a field over the grid's measure."""
    return inner_u(F, F, grid).real


def _decay_rate(f):
    # exponential decay rate e^{-r t}; Laguerre-coefficient signals have r=1/2
    return getattr(f, "decay_rate", 0.5)


def inner_rplus(fhat, ghat, p=0.0, order=GAUSS_LAGUERRE_DEFAULT_ORDER):
    """Gauss-Laguerre value of integral_0^inf fhat(t) conj(ghat(t)) t^p dt.

    The nodes are rescaled so the combined exponential decay of the two
    factors matches the e^{-u} weight (exact for polynomial-times-exponential
    integrands up to degree 2*order - 1).
    """
    if order < 16:
        raise InvalidArgumentError(f"order must be >= 16, got {order}")
    rate = _decay_rate(fhat) + _decay_rate(ghat)
    if p <= -1:
        t0 = 1e-8
        probe = abs(complex(np.asarray(fhat(np.array([t0])))[0])
                    * np.conj(np.asarray(ghat(np.array([t0])))[0]))
        if probe > 1e-3:
            raise InvalidArgumentError(
                f"integrand ~ t^{p} with nonvanishing profiles at 0: divergent weight")
    u, w = gauss_laguerre(order)
    t = u / rate
    fv = np.asarray(fhat(t), dtype=complex)
    gv = np.asarray(ghat(t), dtype=complex)
    integrand = fv * np.conj(gv) * t ** p * np.exp(u)
    return complex(np.sum(w * integrand) / rate)


def distances(z1, z2):
    """Pseudohyperbolic and hyperbolic distance between two half-plane points.

    Returns (rho, d) with rho = |(z1-z2)/(z1-conj(z2))| and
    d = (1/2) log((1+rho)/(1-rho)).
    """
    a = z1.z if isinstance(z1, HalfPlanePoint) else complex(z1)
    b = z2.z if isinstance(z2, HalfPlanePoint) else complex(z2)
    rho = abs((a - b) / (a - np.conj(b)))
    d = 0.5 * math.log((1 + rho) / (1 - rho))
    return rho, d


@dataclass(frozen=True)
class Lattice:
    """Hyperbolic lattice Gamma(a, b) = {a^m (b k + i)} over finite index ranges."""

    a: float
    b: float
    m_range: tuple
    k_range: tuple

    def __post_init__(self):
        if self.a <= 1:
            raise InvalidArgumentError(f"a must be > 1, got {self.a}")
        if self.b <= 0:
            raise InvalidArgumentError(f"b must be > 0, got {self.b}")

    @property
    def ms(self):
        return np.arange(self.m_range[0], self.m_range[1] + 1)

    @property
    def ks(self):
        return np.arange(self.k_range[0], self.k_range[1] + 1)

    @property
    def points(self):
        """Lattice points in (m, k) lexicographic order, as a complex array."""
        ms = self.ms
        ks = self.ks
        am = self.a ** ms.astype(float)
        xs = np.repeat(am, len(ks)) * (self.b * np.tile(ks, len(ms)))
        ss = np.repeat(am, len(ks))
        return xs + 1j * ss

    def __len__(self):
        return len(self.ms) * len(self.ks)

    def to_json(self):
        pts = self.points
        return {
            "a": self.a,
            "b": self.b,
            "m_range": list(self.m_range),
            "k_range": list(self.k_range),
            "points": [[float(z.real), float(z.imag)] for z in pts],
        }

    def dump(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh)


def make_lattice(a, b, m_range, k_range):
    """Build Gamma(a, b) with inclusive integer index intervals."""
    m_range = (int(m_range[0]), int(m_range[1]))
    k_range = (int(k_range[0]), int(k_range[1]))
    if m_range[0] > m_range[1] or k_range[0] > k_range[1]:
        raise InvalidArgumentError("index ranges must be nonempty")
    return Lattice(float(a), float(b), m_range, k_range)


def field_to_csv(path, zs, values, header="x,s,re,im"):
    """Export sampled field values to CSV with columns x,s,re,im."""
    zs = np.asarray(zs, dtype=complex)
    values = np.asarray(values, dtype=complex)
    with open(path, "w") as fh:
        fh.write(header + "\n")
        for z, v in zip(zs, values):
            fh.write(f"{z.real:.17g},{z.imag:.17g},{v.real:.17g},{v.imag:.17g}\n")


def field_from_csv(path):
    """Read back a sampled field CSV; returns (zs, values)."""
    data = np.genfromtxt(path, delimiter=",", skip_header=1)
    data = np.atleast_2d(data)
    if data.shape[1] != 4:
        raise InvalidArgumentError(f"expected 4 columns x,s,re,im in {path}")
    zs = data[:, 0] + 1j * data[:, 1]
    values = data[:, 2] + 1j * data[:, 3]
    return zs, values
