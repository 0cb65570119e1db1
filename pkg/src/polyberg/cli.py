"""Command-line interface: verification, codec, frame scans, and renders.

Exit codes: 0 success, 1 verification failure, 2 usage/input error,
3 numeric/invariant error.  All numbers come from library calls; the CLI
only routes arguments and serializes results.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .calibration import CalibrationReport
from .errors import (AccuracyError, InvalidArgumentError, NumericOverflowError,
                     PoleProximityError)
from . import halfplane as hp
from . import frames as fr
from . import multiplex as mx
from . import polyspace as ps
from . import transforms as tr
from .laguerre import laguerre_fn

# display grid for basis/kernel/mux renders (the verification grid is far
# too fine for a CSV artifact); overridden by any --grid.* flag
RENDER_GRID = dict(X=8.0, n_x=160, s_min=0.05, s_max=20.0, n_s=120)


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 0
    try:
        return args.func(args)
    except (FileNotFoundError, json.JSONDecodeError, KeyError,
            InvalidArgumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NumericOverflowError, PoleProximityError, AccuracyError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="polyberg",
        description="Wavelet / polyanalytic-Bergman transforms, codec, and "
                    "frame analysis on the upper half-plane.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command")
    parser.set_defaults(command=None)

    def common(p):
        p.add_argument("--config", help="JSON config file with grid/M/seed defaults")
        p.add_argument("--seed", type=int, default=None, help="RNG seed")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--grid.X", dest="grid_X", type=float, default=None)
        p.add_argument("--grid.nx", dest="grid_nx", type=int, default=None)
        p.add_argument("--grid.smin", dest="grid_smin", type=float, default=None)
        p.add_argument("--grid.smax", dest="grid_smax", type=float, default=None)
        p.add_argument("--grid.ns", dest="grid_ns", type=int, default=None)
        p.add_argument("--plot", help="also render a figure to this path")

    p = sub.add_parser("verify", help="run the invariant suite and calibration ledger")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mux", help="encode a ChannelSet JSON into a MuxField JSON")
    common(p)
    p.add_argument("input", help="ChannelSet JSON path")
    p.add_argument("--render", help="additionally sample the field to this CSV")
    p.set_defaults(func=cmd_mux)

    p = sub.add_parser("demux", help="decode a MuxField JSON or sampled CSV")
    common(p)
    p.add_argument("input", help="MuxField JSON or field CSV path")
    p.add_argument("--n", type=int, default=None, help="channel count")
    p.add_argument("--M", type=int, default=None, help="mode cutoff")
    p.add_argument("--report", help="write decode diagnostics JSON here")
    p.set_defaults(func=cmd_demux)

    p = sub.add_parser("frame-scan", help="frame estimates over an (a, b) range")
    common(p)
    p.add_argument("--a-range", required=True, help="value or start:stop:count")
    p.add_argument("--b-range", required=True, help="value or start:stop:count")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--M", type=int, default=16)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--variant", choices=["true", "poly"], default="true")
    p.add_argument("--m-range", default="-6:6", help="lattice row index range lo:hi")
    p.add_argument("--k-range", default="-40:40", help="lattice column index range lo:hi")
    p.set_defaults(func=cmd_frame_scan)

    p = sub.add_parser("basis", help="sample a basis function e_{n,m} to CSV")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("kernel", help="sample K^n(z, .) to CSV")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--z", required=True, help="evaluation point as 'x,s'")
    p.add_argument("--M", type=int, default=64, help="basis-sum cutoff")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("import-time-signal",
                       help="convert a uniform time-domain CSV to channel "
                            "coefficients (non-normative convenience bridge)")
    common(p)
    p.add_argument("input", help="CSV with columns t,value or t,re,im")
    p.add_argument("--M", type=int, default=16, help="Laguerre fit cutoff")
    p.set_defaults(func=cmd_import_time_signal)
    return parser


# ---------------------------------------------------------------------------
# config / helpers


def _load_config(args):
    cfg = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            cfg = json.load(fh)
    return cfg


def _grid_params(args, cfg, base=None):
    base = dict(base) if base else dict(X=hp.DEFAULT_X, n_x=hp.DEFAULT_NX,
                                        s_min=hp.DEFAULT_SMIN, s_max=hp.DEFAULT_SMAX,
                                        n_s=hp.DEFAULT_NS)
    g = cfg.get("grid", {})
    for key in base:
        if key in g:
            base[key] = g[key]
    overrides = dict(X=args.grid_X, n_x=args.grid_nx, s_min=args.grid_smin,
                     s_max=args.grid_smax, n_s=args.grid_ns)
    custom = False
    for key, val in overrides.items():
        if val is not None:
            base[key] = val
            custom = True
    return base, custom or bool(g)


def _emit(args, payload):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _seed(args, cfg):
    if args.seed is not None:
        return args.seed
    return int(cfg.get("seed", 0))


def _parse_range(text):
    parts = text.split(":")
    if len(parts) == 1:
        return [float(parts[0])]
    if len(parts) == 3:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 1:
            raise InvalidArgumentError(f"range count must be >= 1 in {text!r}")
        return list(np.linspace(start, stop, count))
    raise InvalidArgumentError(f"range must be 'v' or 'start:stop:count', got {text!r}")


def _parse_index_range(text):
    lo, hi = text.split(":")
    return int(lo), int(hi)


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args):
    cfg = _load_config(args)
    params, _ = _grid_params(args, cfg)

    def factory(measure=hp.PLAIN):
        return hp.make_grid(params["X"], params["n_x"], params["s_min"],
                            params["s_max"], params["n_s"], measure)

    cal = CalibrationReport(grid_factory=factory)
    checks = []

    def check(name, value, expected, tol):
        passed = abs(value - expected) <= tol * max(1.0, abs(expected))
        checks.append({"name": name, "value": float(value),
                       "expected": float(expected), "tolerance": float(tol),
                       "passed": bool(passed)})

    check("admissibility_phi0", cal.channel_admissibility, 0.5, 1e-8)
    worst_cross = max(abs(tr.cross_admissibility(tr.phi(i), tr.phi(j)))
                      for i in range(3) for j in range(3) if i != j)
    check("cross_admissibility_offdiag", worst_cross, 0.0, 1e-10)
    gram_err = _laguerre_gram_error(8)
    check("laguerre_gram_identity", gram_err, 0.0, 1e-8)
    check("isometry_constant", cal.isometry_constant, math.pi, 0.01)
    check("basis_norm_constant", cal.basis_norm_constant, math.pi, 0.01)
    check("ortho_constant", abs(cal.ortho_constant), 2 * math.pi, 0.01)
    for method in ("orders", "wavelet"):
        worst = max(abs(cal.method_constant(method, n) - 1.0) for n in range(4))
        check(f"method_constant_{method}", worst, 0.0, 1e-9)
    check("intertwining_exponent", cal.intertwining_exponent, -1.0, 1e-6)
    z0, w0 = 0.3 + 0.9j, -0.2 + 1.4j
    k0 = ps.kernel_basis_sum(0, z0, w0, M=64)
    closed = -1.0 / math.pi * (z0 - np.conj(w0)) ** -2.0
    check("kernel_k0_closed_form", abs(k0 - closed), 0.0, 1e-6)

    ok = all(c["passed"] for c in checks)
    payload = {
        "version": __version__,
        "passed": ok,
        "checks": checks,
        "calibration": cal.to_json(max_order=3),
        "grid": params,
    }
    _emit(args, payload)
    if args.plot:
        from . import report
        report.plot_verify(args.plot, checks)
    if not ok:
        for c in checks:
            if not c["passed"]:
                print(f"FAIL {c['name']}: value {c['value']:.6g} vs "
                      f"expected {c['expected']:.6g} (tol {c['tolerance']:g})",
                      file=sys.stderr)
        return 1
    return 0


def _laguerre_gram_error(nmax, order=128):
    u, w = hp.gauss_laguerre(order)
    worst = 0.0
    for i in range(nmax + 1):
        for j in range(i, nmax + 1):
            vi = laguerre_fn(i, 0.0, u)
            vj = laguerre_fn(j, 0.0, u)
            val = float(np.sum(w * np.exp(u) * vi * vj))
            worst = max(worst, abs(val - (1.0 if i == j else 0.0)))
    return worst


# ---------------------------------------------------------------------------
# codec


def _render_grid(args, cfg):
    params, custom = _grid_params(args, cfg, base=RENDER_GRID)
    return hp.make_grid(params["X"], params["n_x"], params["s_min"],
                        params["s_max"], params["n_s"])


def cmd_mux(args):
    cfg = _load_config(args)
    with open(args.input) as fh:
        channels = tr.ChannelSet.from_json(json.load(fh))
    fld = mx.encode(channels)
    _emit(args, fld.to_json())
    if args.render or args.plot:
        grid = _render_grid(args, cfg)
        values = fld(grid.zs)
        if args.render:
            hp.field_to_csv(args.render, grid.zs, values)
        if args.plot:
            from . import report
            report.plot_field(args.plot, grid.xs, grid.ss, values,
                              title=f"multiplexed field (n={fld.n}, M={fld.M})")
    return 0


def cmd_demux(args):
    cfg = _load_config(args)
    diagnostics = {}
    if args.input.endswith(".csv"):
        if args.n is None or args.M is None:
            raise InvalidArgumentError("sampled demux needs --n and --M")
        grid = _render_grid(args, cfg)
        zs, values = hp.field_from_csv(args.input)
        if len(zs) != len(grid) or not np.allclose(zs, grid.zs):
            raise InvalidArgumentError(
                "CSV nodes do not match the configured grid; pass the same "
                "--grid.* / --config used to render")
        channels = mx.decode_samples(values, args.n, args.M, grid)
        resid = _sample_residual(channels, values, grid)
        diagnostics = {"mode": "sampled", "sample_relative_residual": resid}
    else:
        with open(args.input) as fh:
            fld = mx.MuxField.from_json(json.load(fh))
        channels = mx.decode(fld, n=args.n, M=args.M)
        diagnostics = {"mode": "coefficient"}
    _emit(args, channels.to_json())
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(diagnostics, fh, indent=2, sort_keys=True)
    return 0


def _sample_residual(channels, values, grid):
    """Relative L2 mismatch between the input samples and the re-rendered decode."""
    re_rendered = mx.encode(channels)(grid.zs)
    num = np.sum(grid.weights * np.abs(values - re_rendered) ** 2)
    den = np.sum(grid.weights * np.abs(values) ** 2)
    return float(math.sqrt(num / den)) if den > 0 else 0.0


# ---------------------------------------------------------------------------
# frames


def cmd_frame_scan(args):
    cfg = _load_config(args)
    seed = _seed(args, cfg)
    a_values = _parse_range(args.a_range)
    b_values = _parse_range(args.b_range)
    if not a_values or not b_values:
        raise InvalidArgumentError("empty parameter range")
    m_range = _parse_index_range(args.m_range)
    k_range = _parse_index_range(args.k_range)
    reports = []
    for a in a_values:
        for b in b_values:
            lattice = hp.make_lattice(a, b, m_range, k_range)
            reports.append(fr.frame_ratio(args.n, lattice, M=args.M,
                                          trials=args.trials, seed=seed,
                                          variant=args.variant, alpha=args.alpha))
    lines = ["a,b,n,density_value,threshold,lower_est,upper_est"]
    for r in reports:
        lines.append(f"{r.a:.17g},{r.b:.17g},{r.n},{r.density_value:.17g},"
                     f"{r.threshold:.17g},{r.lower_est:.17g},{r.upper_est:.17g}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.plot:
        from . import report
        report.plot_frame_scan(args.plot, reports)
    return 0


# ---------------------------------------------------------------------------
# renders


def cmd_basis(args):
    cfg = _load_config(args)
    grid = _render_grid(args, cfg)
    values = ps.basis_e(args.n, args.m, grid.zs)
    out = args.out or f"basis_{args.n}_{args.m}.csv"
    hp.field_to_csv(out, grid.zs, values)
    if args.plot:
        from . import report
        report.plot_field(args.plot, grid.xs, grid.ss, values,
                          title=f"e_{{{args.n},{args.m}}}")
    return 0


def cmd_kernel(args):
    cfg = _load_config(args)
    try:
        xs, ss = (float(v) for v in args.z.split(","))
    except ValueError as exc:
        raise InvalidArgumentError(f"--z must be 'x,s', got {args.z!r}") from exc
    z0 = hp.HalfPlanePoint(xs, ss).z
    grid = _render_grid(args, cfg)
    values = ps.kernel_basis_sum(args.n, z0, grid.zs, M=args.M)
    out = args.out or f"kernel_{args.n}.csv"
    hp.field_to_csv(out, grid.zs, values)
    if args.plot:
        from . import report
        report.plot_field(args.plot, grid.xs, grid.ss, values,
                          title=f"K^{args.n}(z, .) at z={z0}")
    return 0


# ---------------------------------------------------------------------------
# time-signal import (non-normative bridge)


def cmd_import_time_signal(args):
    data = np.genfromtxt(args.input, delimiter=",", skip_header=1)
    data = np.atleast_2d(data)
    if data.shape[1] == 2:
        t, v = data[:, 0], data[:, 1].astype(complex)
    elif data.shape[1] == 3:
        t, v = data[:, 0], data[:, 1] + 1j * data[:, 2]
    else:
        raise InvalidArgumentError("expected columns t,value or t,re,im")
    if len(t) < 4:
        raise InvalidArgumentError("need at least 4 samples")
    dt = float(np.mean(np.diff(t)))
    if not np.allclose(np.diff(t), dt, rtol=1e-6):
        raise InvalidArgumentError("time samples must be uniform")
    # positive-frequency spectrum of the sampled signal
    spectrum = dt * np.fft.fft(v)
    freqs = 2.0 * math.pi * np.fft.fftfreq(len(v), d=dt)
    keep = freqs > 0
    omega, F = freqs[keep], spectrum[keep]
    # least-squares Laguerre fit over the positive frequencies
    A = np.stack([laguerre_fn(m, 1.0, omega) for m in range(args.M)], axis=1)
    coeffs, *_ = np.linalg.lstsq(A, F, rcond=None)
    fhat = tr.RPlusCoeffs(coeffs)
    resid = float(np.linalg.norm(A @ coeffs - F) / max(np.linalg.norm(F), 1e-300))
    payload = fhat.to_json()
    payload["fit_relative_residual"] = resid
    _emit(args, payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())
