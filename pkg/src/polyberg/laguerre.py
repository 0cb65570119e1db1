"""Stable evaluation of Laguerre polynomials and Laguerre functions.

Evaluation uses the three-term recurrence

    (n+1) L_{n+1}^a(x) = (2n + a + 1 - x) L_n^a(x) - (n + a) L_{n-1}^a(x),

which avoids the catastrophic cancellation of the power series at large x.
"""

import math

import numpy as np

from .errors import InvalidArgumentError

__all__ = ["laguerre_poly", "laguerre_fn", "log_gamma"]


def laguerre_poly(n, alpha, x):
    """Generalized Laguerre polynomial L_n^alpha evaluated at x.

    Parameters
    ----------
    n : int
        Degree, n >= 0.
    alpha : float
        Order parameter, alpha > -1.
    x : float or ndarray
        Evaluation points (finite).

    Returns
    -------
    float or ndarray
        L_n^alpha(x), by upward three-term recurrence.
    """
    if n < 0 or int(n) != n:
        raise InvalidArgumentError(f"degree must be a nonnegative integer, got {n}")
    if alpha <= -1:
        raise InvalidArgumentError(f"alpha must be > -1, got {alpha}")
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise InvalidArgumentError("x must be finite")

    if n == 0:
        out = np.ones_like(x)
        return out if out.ndim else float(out)
    lkm1 = np.ones_like(x)
    lk = (alpha + 1.0) - x
    for k in range(1, n):
        lkp1 = ((2 * k + alpha + 1 - x) * lk - (k + alpha) * lkm1) / (k + 1)
        lkm1, lk = lk, lkp1
    return lk if lk.ndim else float(lk)


def laguerre_fn(n, alpha, x):
    """Laguerre function l_n^alpha(x) = 1_{[0,inf)}(x) e^{-x/2} x^{alpha/2} L_n^alpha(x).

    Exactly 0 for x < 0 (indicator semantics, never an error).
    """
    if alpha < 0:
        raise InvalidArgumentError(f"alpha must be >= 0, got {alpha}")
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise InvalidArgumentError("x must be finite")
    pos = x > 0
    xp = np.where(pos, x, 1.0)  # dummy positive value where masked out
    vals = np.exp(-xp / 2.0) * xp ** (alpha / 2.0) * laguerre_poly(n, alpha, xp)
    out = np.where(pos, vals, 0.0)
    # x == 0 contributes only for alpha == 0 (0^0 taken as 1 there)
    if alpha == 0:
        out = np.where(x == 0, laguerre_poly(n, alpha, np.zeros_like(x)), out)
    return out if out.ndim else float(out)


def log_gamma(x):
    """Natural log of Gamma(x) for x > 0."""
    if x <= 0:
        raise InvalidArgumentError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def lag1_series_coeffs(m):
    """Monomial coefficients of L_m^1: L_m^1(t) = sum_j c_j t^j.

    c_j = (-1)^j C(m+1, m-j) / j!.
    """
    return [(-1.0) ** j * math.comb(m + 1, m - j) / math.factorial(j) for j in range(m + 1)]
