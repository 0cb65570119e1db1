"""Laguerre wavelet transforms, polyanalytic Bergman spaces, and a codec.

The package maps Fourier-side signals on the positive axis to analytic and
polyanalytic fields on the upper half-plane, provides the orthogonal basis
and reproducing kernels of the true polyanalytic spaces, multiplexes
n-channel signals into one field and recovers them by projection, and
analyzes sampling on hyperbolic lattices.
"""

__version__ = "0.1.0"

from .errors import (AccuracyError, InvalidArgumentError, NumericOverflowError,
                     PoleProximityError)
from .laguerre import laguerre_fn, laguerre_poly
from .halfplane import (AFFINE, PLAIN, HalfPlaneGrid, HalfPlanePoint, Lattice,
                        Measure, default_grid, distances, inner_rplus, inner_u,
                        make_grid, make_lattice, norm_sq_u)
from .transforms import (AnalyzerProfile, ChannelSet, RPlusCoeffs,
                         admissibility, ber_alpha, cross_admissibility, cwt,
                         phi, poly_ber, psi, true_ber, true_ber_oracle,
                         vector_cwt)
from .polyspace import (KernelSpec, PolyField, basis_e, basis_e_normalized,
                        dbar_power, kernel_poly, kernel_true, kernel_wavelet,
                        omega, polyanalytic_degree, project_true, psi_beta)
from .frames import (ConditionReport, FrameReport, frame_ratio, h_checks,
                     h_eval, necessary_condition, sampling_sum)
from .multiplex import MuxField, RoundTripReport, decode, encode, roundtrip
from .calibration import CalibrationReport, get_calibration

__all__ = [
    "__version__",
    "AccuracyError", "InvalidArgumentError", "NumericOverflowError",
    "PoleProximityError",
    "laguerre_fn", "laguerre_poly",
    "AFFINE", "PLAIN", "HalfPlaneGrid", "HalfPlanePoint", "Lattice", "Measure",
    "default_grid", "distances", "inner_rplus", "inner_u", "make_grid",
    "make_lattice", "norm_sq_u",
    "AnalyzerProfile", "ChannelSet", "RPlusCoeffs", "admissibility",
    "ber_alpha", "cross_admissibility", "cwt", "phi", "poly_ber", "psi",
    "true_ber", "true_ber_oracle", "vector_cwt",
    "KernelSpec", "PolyField", "basis_e", "basis_e_normalized", "dbar_power",
    "kernel_poly", "kernel_true", "kernel_wavelet", "omega",
    "polyanalytic_degree", "project_true", "psi_beta",
    "ConditionReport", "FrameReport", "frame_ratio", "h_checks", "h_eval",
    "necessary_condition", "sampling_sum",
    "MuxField", "RoundTripReport", "decode", "encode", "roundtrip",
    "CalibrationReport", "get_calibration",
]
