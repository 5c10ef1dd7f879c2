"""Render the report tables as matplotlib figures next to the data files."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "save_spectrum_figure",
    "save_dynamics_figure",
    "save_heatmap_figure",
    "save_hom_figure",
]

_META = {"Software": None}  # keep PNG bytes independent of the toolchain


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=150, metadata=_META)
    plt.close(fig)


def save_spectrum_figure(path, m, energies, in_quasi, m0):
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    m = np.asarray(m)
    energies = np.asarray(energies)
    quasi = np.asarray(in_quasi, dtype=bool)
    if quasi.any():
        ax.axvspan(m[quasi].min(), m[quasi].max(), color="0.85", zorder=0,
                   label="quasi-ground manifold")
    ax.plot(m, energies, ".", ms=2.5, color="k")
    ax.axvline(m0, color="C3", lw=0.8, ls="--", label=f"$m_0={m0:g}$")
    ax.set_xlabel("$m$")
    ax.set_ylabel("$E_m$")
    ax.legend(loc="best", fontsize=8)
    _finish(fig, path)


def save_dynamics_figure(path, t, abs2_exact, abs2_closed, period=None):
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    ax.plot(t, abs2_closed, "-", lw=1.0, color="C0", label="closed form")
    step = max(1, len(t) // 400)
    ax.plot(t[::step], abs2_exact[::step], "s", ms=2.5, mfc="none",
            color="C3", label="exact sum")
    ax.set_xlabel("$t$")
    ax.set_ylabel(r"$|\langle\Psi(0)|\Psi(t)\rangle|^2$")
    title = "overlap dynamics"
    if period is not None:
        title += f"  (measured period {period:.4g})"
    ax.set_title(title, fontsize=10)
    ax.legend(loc="upper right", fontsize=8)
    _finish(fig, path)


def save_heatmap_figure(path, q, p, values, locus=None, label=""):
    fig, ax = plt.subplots(figsize=(5.6, 4.4))
    mesh = ax.pcolormesh(q, p, np.asarray(values).T, shading="nearest",
                         cmap="viridis", rasterized=True)
    fig.colorbar(mesh, ax=ax, label=label)
    if locus is not None and len(locus) > 1:
        qs = [pt.q for pt in locus]
        ps = [pt.p for pt in locus]
        half = len(qs) // 2
        ax.plot(qs[:half], ps[:half], "k--", lw=1.0)
        ax.plot(qs[half:], ps[half:], "k--", lw=1.0)
    ax.set_xlabel("$Q$")
    ax.set_ylabel("$P$")
    _finish(fig, path)


def save_hom_figure(path, t, exact_v, mc_mean, mc_stderr):
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    ax.plot(t, exact_v, "-", lw=1.0, color="C0", label="exact $\\langle V\\rangle$")
    ax.errorbar(t, mc_mean, yerr=3 * np.asarray(mc_stderr), fmt=".", ms=3,
                color="C3", lw=0.6, capsize=1.5, label="parity counting ($\\pm3\\sigma$)")
    ax.set_xlabel("$t$")
    ax.set_ylabel(r"$\langle V\rangle$")
    ax.legend(loc="upper right", fontsize=8)
    _finish(fig, path)
