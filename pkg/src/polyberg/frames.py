"""Sampling sums, empirical frame bounds, and the hyperbolic density condition.

Frame bounds over a hyperbolic lattice are estimated from a finite random
dictionary, so ``lower_est`` is an upper bound on the true lower frame bound
A and ``upper_est`` a lower bound on B; the spectral quantities themselves
are out of reach of any finite computation and are not claimed.

The quasi-periodic function ``h_eval`` plays the role of the sine function
for the lattice Gamma(a, b): it vanishes exactly on the lattice, satisfies
h(az) = -e^{-2 pi / b} h(z), and grows like s^{-2 pi/(b ln a)} on vertical
rays.
"""

import cmath
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import InvalidArgumentError, NumericOverflowError, PoleProximityError
from .halfplane import HalfPlanePoint, Lattice
from .polyspace import BASIS_NORM, PolyField

__all__ = [
    "FrameReport",
    "ConditionReport",
    "sampling_sum",
    "frame_ratio",
    "necessary_condition",
    "h_eval",
    "h_checks",
]


@dataclass(frozen=True)
class FrameReport:
    """Finite-dictionary frame-bound estimate for a lattice and space order."""

    a: float
    b: float
    n: int
    lower_est: float
    upper_est: float
    ratio: float
    density_value: float
    threshold: float
    dictionary_size: int
    seed: int

    def __post_init__(self):
        if self.lower_est > self.upper_est:
            raise InvalidArgumentError("lower_est must not exceed upper_est")
        if self.threshold <= 0:
            raise InvalidArgumentError("threshold must be positive")

    def to_json(self):
        return asdict(self)


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of the necessary density condition b ln a < 2 pi (n+1)/(alpha+1)."""

    value: float
    threshold: float
    satisfied: bool
    margin: float

    def __post_init__(self):
        if self.satisfied != (self.value < self.threshold):
            raise InvalidArgumentError("satisfied flag inconsistent with value/threshold")

    def to_json(self):
        return asdict(self)


def sampling_sum(F, lattice):
    """Lattice sampling sum sum_{z in Gamma} s^2 |F(z)|^2.

    Summation runs in the lattice's (m, k) lexicographic node order.
    """
    zs = lattice.points
    vals = np.asarray(F(zs), dtype=complex)
    terms = np.imag(zs) ** 2 * np.abs(vals) ** 2
    bad = ~np.isfinite(terms)
    if np.any(bad):
        j = int(np.argmax(bad))
        m = lattice.ms[j // len(lattice.ks)]
        k = lattice.ks[j % len(lattice.ks)]
        raise NumericOverflowError(f"non-finite sample at lattice index (m={m}, k={k})")
    return float(np.sum(terms))


def _random_field(rng, n, M, variant):
    """Unit-norm random field: order-n true space, or the order-n sum space."""
    rows = n + 1 if variant == "poly" else 1
    c = rng.standard_normal((rows, M)) + 1j * rng.standard_normal((rows, M))
    weights = BASIS_NORM * (np.arange(M) + 1)
    c = c / math.sqrt(float(np.sum(np.abs(c) ** 2 * weights)))
    if variant == "poly":
        return PolyField(coeffs=c)
    full = np.zeros((n + 1, M), dtype=complex)
    full[n] = c[0]
    return PolyField(coeffs=full)


def frame_ratio(n, lattice, M=16, trials=50, seed=0, variant="true", alpha=0.0):
    """Empirical frame-bound estimates over random unit-norm dictionary fields.

    Each trial draws a normalized coefficient vector in the order-n true
    space (``variant='true'``) or in the full order-(n+1) sum space
    (``variant='poly'``, the superframe surrogate), and records
    r = sampling_sum(F, lattice) / ||F||^2.  The min over trials is
    ``lower_est`` and the max ``upper_est``; ``ratio`` is the trial mean.
    """
    if trials < 1 or M < 1:
        raise InvalidArgumentError("trials and M must be at least 1")
    if variant not in ("true", "poly"):
        raise InvalidArgumentError(f"unknown variant {variant!r}")
    if len(lattice) == 0:
        raise InvalidArgumentError("lattice is empty")
    rs = []
    for trial in range(trials):
        rng = np.random.default_rng((seed, trial))
        F = _random_field(rng, n, M, variant)
        rs.append(sampling_sum(F, lattice))  # ||F||^2 == 1 by construction
    return FrameReport(
        a=lattice.a,
        b=lattice.b,
        n=n,
        lower_est=float(min(rs)),
        upper_est=float(max(rs)),
        ratio=float(np.mean(rs)),
        density_value=lattice.b * math.log(lattice.a),
        threshold=2.0 * math.pi * (n + 1) / (alpha + 1.0),
        dictionary_size=trials,
        seed=seed,
    )


def necessary_condition(a, b, n, alpha=0.0):
    """Necessary density condition for sampling: b ln a < 2 pi (n+1)/(alpha+1).

    Pass n=0 for the superframe check (threshold 2 pi).
    """
    if a <= 1:
        raise InvalidArgumentError(f"a must be > 1, got {a}")
    if b <= 0:
        raise InvalidArgumentError(f"b must be > 0, got {b}")
    if n < 0 or alpha < 0:
        raise InvalidArgumentError("n and alpha must be nonnegative")
    value = b * math.log(a)
    threshold = 2.0 * math.pi * (n + 1) / (alpha + 1.0)
    return ConditionReport(value=value, threshold=threshold,
                           satisfied=value < threshold, margin=threshold - value)


def _log_sin(w):
    """log sin(w) in a form stable for large |Im w|.

    For Im w >= 0, sin w = (i/2) e^{-iw} (1 - e^{2iw}); the mirror case uses
    conjugation symmetry.  Returns -inf real part at zeros of sin.
    """
    if w.imag < 0:
        return np.conj(_log_sin(np.conj(w)))
    # snap to the exact zeros w = pi * n: lattice points land here only up to
    # float rounding, and quasi-periodic growth would amplify that rounding
    near = math.pi * round(w.real / math.pi)
    if abs(w - near) < 1e-9 * (1.0 + abs(w)):
        return complex(-math.inf, 0.0)
    q = cmath.exp(2j * w)
    return -1j * w + cmath.log(1.0 - q) + cmath.log(0.5j)


def h_eval(z, a, b, trunc=60):
    """Truncated quasi-periodic lattice function h_K(z) for Gamma(a, b).

    h_K(z) = prod_{k=0}^{K} sin(pi b^-1 a^-k (i a^k - z)) / sin(pi b^-1 a^-k (i a^k + z))
           * prod_{m=1}^{K} e^{2 pi/b} sin(pi b^-1 a^m (z - i a^-m)) / sin(pi b^-1 a^m (z + i a^-m)),

    accumulated in log-magnitude + phase form.  Vanishes on lattice points
    well inside the truncation range.
    """
    if trunc < 8:
        raise InvalidArgumentError(f"trunc must be >= 8, got {trunc}")
    if a <= 1 or b <= 0:
        raise InvalidArgumentError("need a > 1 and b > 0")
    zc = z.z if isinstance(z, HalfPlanePoint) else complex(z)
    c = math.pi / b
    log_total = 0.0 + 0.0j
    for k in range(trunc + 1):
        ak = a ** float(k)
        num = _log_sin(c / ak * (1j * ak - zc))
        den = _log_sin(c / ak * (1j * ak + zc))
        if den.real < math.log(1e-14):
            raise PoleProximityError(f"denominator vanishes at factor k={k}")
        log_total += num - den
        if log_total.real == -math.inf:
            return 0.0j
    for m in range(1, trunc + 1):
        am = a ** float(m)
        num = _log_sin(c * am * (zc - 1j / am))
        den = _log_sin(c * am * (zc + 1j / am))
        if den.real < math.log(1e-14):
            raise PoleProximityError(f"denominator vanishes at factor m={m}")
        log_total += 2.0 * math.pi / b + num - den
        if log_total.real == -math.inf:
            return 0.0j
    if log_total.real > 700.0:
        raise NumericOverflowError(
            f"|h| overflows double precision (log magnitude {log_total.real:.1f})")
    return cmath.exp(log_total)


def h_checks(a, b, trunc=200, probes=None):
    """Quasi-periodicity residual and growth-slope fit for h.

    Returns a dict with the max relative residual of
    h(az) + e^{-2 pi/b} h(z) over the probes and the least-squares slope of
    log|h(is)| against log s on a geometric ladder s = a^{j+1/2},
    j = -3..2 (half-integer powers keep clear of the lattice zeros at
    s = a^m), next to the predicted exponent -2 pi/(b ln a).
    """
    if probes is None:
        rng = np.random.default_rng(7)
        probes = [complex(0.31 + 0.11 * t, 0.45 * a ** u)
                  for t, u in zip(rng.uniform(-1, 1, 20), rng.uniform(-1, 1, 20))]
    worst = 0.0
    for p in probes:
        hz = h_eval(p, a, b, trunc)
        haz = h_eval(a * p, a, b, trunc)
        if hz == 0:
            raise InvalidArgumentError(f"probe {p} lies on the lattice")
        worst = max(worst, abs(haz + math.exp(-2.0 * math.pi / b) * hz) / abs(hz))
    js = np.arange(-3, 3)
    ss = a ** (js + 0.5)
    logs = np.log(np.abs([h_eval(1j * s, a, b, trunc) for s in ss]))
    slope = float(np.polyfit(np.log(ss), logs, 1)[0])
    predicted = -2.0 * math.pi / (b * math.log(a))
    return {
        "quasi_periodicity_residual": float(worst),
        "growth_slope": slope,
        "predicted_slope": predicted,
        "slope_rel_error": abs(slope - predicted) / abs(predicted),
    }
