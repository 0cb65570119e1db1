"""Figure rendering for CLI reports.

Every plot is written straight to a file with the Agg backend; figures
accompany the delimited/JSON artifacts and never open a window.
"""

import matplotlib

matplotlib.use("Agg")

import numpy as np
import matplotlib.pyplot as plt

__all__ = ["plot_field", "plot_frame_scan", "plot_verify"]


def plot_field(path, xs, ss, values, title=""):
    """Heatmap of |F| over a rectangular half-plane grid (log-s axis)."""
    xs = np.asarray(xs, dtype=float)
    ss = np.asarray(ss, dtype=float)
    mags = np.abs(np.asarray(values, dtype=complex))
    ux = np.unique(xs)
    us = np.unique(ss)
    img = np.full((len(us), len(ux)), np.nan)
    ix = np.searchsorted(ux, xs)
    is_ = np.searchsorted(us, ss)
    img[is_, ix] = mags
    fig, ax = plt.subplots(figsize=(7, 4.5))
    mesh = ax.pcolormesh(ux, us, img, shading="nearest", cmap="magma")
    ax.set_yscale("log")
    ax.set_xlabel("x")
    ax.set_ylabel("s")
    if title:
        ax.set_title(title)
    fig.colorbar(mesh, ax=ax, label="|F|")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def plot_frame_scan(path, reports):
    """Frame estimates against lattice density, with the threshold marked."""
    dens = [r.density_value for r in reports]
    lows = [r.lower_est for r in reports]
    ups = [r.upper_est for r in reports]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(dens, lows, "o-", label="lower_est")
    ax.plot(dens, ups, "s-", label="upper_est")
    thr = reports[0].threshold
    ax.axvline(thr, color="k", linestyle="--", label=f"threshold {thr:.3f}")
    ax.set_xlabel("b ln a")
    ax.set_ylabel("sampling-sum ratio")
    ax.set_yscale("log")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def plot_verify(path, checks):
    """Bar chart of measured/expected ratios per verification check."""
    names = [c["name"] for c in checks]
    ratios = []
    for c in checks:
        expected = c["expected"]
        ratios.append(c["value"] / expected if expected else np.nan)
    colors = ["tab:green" if c["passed"] else "tab:red" for c in checks]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.bar(range(len(names)), ratios, color=colors)
    ax.axhline(1.0, color="k", linewidth=0.8)
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("measured / expected")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
