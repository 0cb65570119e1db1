"""n-channel multiplexing through true polyanalytic components.

Encoding stores channel k's Laguerre coefficients as the order-k component
of one field; decoding recovers them either exactly from the coefficient
table or, for a sampled field, by a Gram-system projection onto the basis
over the quadrature grid (the Gram solve cancels the shared quadrature bias
of the basis inner products).
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import AccuracyError, InvalidArgumentError
from .halfplane import default_grid
from .polyspace import PolyField, basis_e
from .transforms import ChannelSet, RPlusCoeffs

__all__ = ["MuxField", "RoundTripReport", "encode", "decode", "decode_samples",
           "roundtrip"]

MAX_CHANNELS = 8
MAX_MODES = 64

_CHUNK = 131072  # grid nodes per accumulation block in the sampled decode


class MuxField:
    """Multiplexed field: channel-major coefficient table c[k][m].

    As a function, F = sum_{k<n, m<M} c[k][m] e_{k,m}.
    """

    def __init__(self, coeffs):
        c = np.atleast_2d(np.asarray(coeffs, dtype=complex))
        if not np.all(np.isfinite(c)):
            raise InvalidArgumentError("coefficient table must be finite")
        if c.shape[0] < 1 or c.shape[0] > MAX_CHANNELS:
            raise InvalidArgumentError(
                f"channel count must be in [1, {MAX_CHANNELS}], got {c.shape[0]}")
        if c.shape[1] > MAX_MODES:
            raise InvalidArgumentError(f"mode cutoff above {MAX_MODES}")
        self.coeffs = c

    @property
    def n(self):
        return self.coeffs.shape[0]

    @property
    def M(self):
        return self.coeffs.shape[1]

    def as_field(self):
        return PolyField(coeffs=self.coeffs)

    def __call__(self, z):
        return self.as_field()(z)

    @property
    def norm_sq(self):
        return self.as_field().norm_sq

    def to_json(self):
        return {
            "n": self.n,
            "M": self.M,
            "coeffs": [[[float(c.real), float(c.imag)] for c in row]
                       for row in self.coeffs],
        }

    @classmethod
    def from_json(cls, d):
        c = [[complex(re, im) for re, im in row] for row in d["coeffs"]]
        out = cls(c)
        if out.n != d["n"] or out.M != d["M"]:
            raise InvalidArgumentError("declared n/M inconsistent with table shape")
        return out


@dataclass
class RoundTripReport:
    """Fidelity metrics of one encode/decode cycle."""

    mode: str
    channel_errors: list
    crosstalk: np.ndarray
    encode_seconds: float
    decode_seconds: float
    extras: dict = field(default_factory=dict)

    @property
    def max_error(self):
        return max(self.channel_errors)

    def to_json(self):
        return {
            "mode": self.mode,
            "channel_errors": [float(e) for e in self.channel_errors],
            "crosstalk": [[float(v) for v in row] for row in self.crosstalk],
            "encode_seconds": self.encode_seconds,
            "decode_seconds": self.decode_seconds,
            **self.extras,
        }


def encode(channels):
    """Multiplex an n-channel signal into one coefficient table.

    Exact at the coefficient level: the order-k transform of the m-th
    Laguerre mode is the basis function e_{k,m}.
    """
    if not isinstance(channels, ChannelSet):
        channels = ChannelSet(channels)
    c = np.stack([ch.coeffs for ch in channels.channels])
    return MuxField(c)


def _basis_values(n, M, zs):
    """Rows of basis values e_{k,m}(z_j) in channel-major index order."""
    V = np.empty((n * M, len(zs)), dtype=complex)
    for k in range(n):
        for m in range(M):
            V[k * M + m] = basis_e(k, m, zs)
    return V


def decode(fld, n=None, M=None, grid=None, cond_threshold=1e6):
    """Recover the channel signals from a multiplexed field.

    A ``MuxField`` decodes exactly from its table.  A callable field is
    decoded in sampled mode: basis inner products over the grid assemble a
    Gram system G c = b whose solution gives the channel coefficients.
    """
    if isinstance(fld, MuxField):
        if n is not None and n != fld.n:
            raise InvalidArgumentError(f"declared n={n} but field has {fld.n} channels")
        if M is not None and M != fld.M:
            raise InvalidArgumentError(f"declared M={M} but field has {fld.M} modes")
        return ChannelSet([RPlusCoeffs(row) for row in fld.coeffs])

    if n is None or M is None:
        raise InvalidArgumentError("sampled decode needs declared n and M")
    if n < 1 or n > MAX_CHANNELS or M < 1 or M > MAX_MODES:
        raise InvalidArgumentError("n or M out of supported range")
    if grid is None:
        grid = default_grid()
    return _decode_sampled_many([fld], n, M, grid, cond_threshold)[0]


def decode_samples(values, n, M, grid, cond_threshold=1e6):
    """Sampled-mode decode from precomputed field values on the grid's nodes."""
    values = np.asarray(values, dtype=complex)
    if values.shape != (len(grid),):
        raise InvalidArgumentError(
            f"expected {len(grid)} samples in grid node order, got {values.shape}")
    return _decode_sampled_many([values], n, M, grid, cond_threshold)[0]


def _decode_sampled_many(fields, n, M, grid, cond_threshold=1e6):
    """Gram-decode several sampled fields in one pass over the grid."""
    zs = grid.zs
    w = grid.weights
    nb = n * M
    G = np.zeros((nb, nb), dtype=complex)
    B = np.zeros((nb, len(fields)), dtype=complex)
    for lo in range(0, len(zs), _CHUNK):
        sl = slice(lo, lo + _CHUNK)
        V = _basis_values(n, M, zs[sl])
        Vw = V * w[sl]
        G += Vw @ V.conj().T
        for col, fld in enumerate(fields):
            fv = (fld[sl] if isinstance(fld, np.ndarray)
                  else np.asarray(fld(zs[sl]), dtype=complex))
            if not np.all(np.isfinite(fv)):
                raise InvalidArgumentError("field evaluates non-finite on the grid")
            B[:, col] += Vw @ fv.conj()
    # G[i,j] = <e_j, e_i>; B[i] = <F, e_i> conjugated consistently
    G = G.conj()
    B = B.conj()
    # Jacobi equilibration: basis norms grow with the mode index, so the
    # raw Gram's condition number mostly reflects scaling, not the grid
    d = np.sqrt(np.real(np.diag(G)))
    if np.any(d <= 0):
        raise AccuracyError(
            "grid cannot resolve a basis function at all",
            details={"n": n, "M": M, "grid_nodes": len(grid)})
    Gs = G / np.outer(d, d)
    cond = np.linalg.cond(Gs)
    if cond > cond_threshold:
        raise AccuracyError(
            "basis Gram system is ill-conditioned on this grid",
            details={"condition_number": float(cond), "n": n, "M": M,
                     "grid_nodes": len(grid)})
    C = np.linalg.solve(Gs, B / d[:, None]) / d[:, None]
    return [ChannelSet([RPlusCoeffs(row) for row in C[:, col].reshape(n, M)])
            for col in range(len(fields))]


def roundtrip(channels, mode="coefficient", grid=None, seed=0, with_crosstalk=True):
    """Encode, decode, and report per-channel errors and crosstalk.

    Crosstalk X[k][j] is the energy fraction recovered in channel j when
    only channel k is sent.
    """
    if mode not in ("coefficient", "sampled"):
        raise InvalidArgumentError(f"unknown mode {mode!r}")
    if not isinstance(channels, ChannelSet):
        channels = ChannelSet(channels)
    n, M = channels.n, channels.modes

    t0 = time.perf_counter()
    fld = encode(channels)
    t1 = time.perf_counter()

    jobs = [fld]
    solo_rows = []
    if with_crosstalk:
        for k in range(n):
            if channels.channels[k].norm_sq == 0:
                continue
            solo = np.zeros_like(fld.coeffs)
            solo[k] = channels.channels[k].coeffs
            jobs.append(MuxField(solo))
            solo_rows.append(k)
    results = _decode_jobs(jobs, mode, n, M, grid)
    decoded = results[0]
    t2 = time.perf_counter()

    errors = []
    for sent, got in zip(channels.channels, decoded.channels):
        diff = RPlusCoeffs(got.coeffs - sent.coeffs)
        denom = math.sqrt(sent.norm_sq) if sent.norm_sq > 0 else 1.0
        errors.append(math.sqrt(diff.norm_sq) / denom)

    X = np.zeros((n, n))
    for k, got in zip(solo_rows, results[1:]):
        sent_energy = channels.channels[k].norm_sq
        for j in range(n):
            X[k, j] = got.channels[j].norm_sq / sent_energy

    return RoundTripReport(
        mode=mode,
        channel_errors=errors,
        crosstalk=X,
        encode_seconds=t1 - t0,
        decode_seconds=t2 - t1,
        extras={"n": n, "M": M, "seed": seed},
    )


def _decode_jobs(fields, mode, n, M, grid):
    if mode == "coefficient":
        return [decode(f) for f in fields]
    if grid is None:
        grid = default_grid()
    return _decode_sampled_many([f.as_field() for f in fields], n, M, grid)
