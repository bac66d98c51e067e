"""Matplotlib figure rendering for the CLI report paths.

Figures are written straight to files (Agg backend); nothing here is
needed by the numerical library.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def scan_heatmap(ks, omegas, s_zz, path) -> None:
    """Intensity map of S^zz over the (k, omega) grid, with band boundaries."""
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    grid = np.asarray(s_zz).reshape(len(ks), len(omegas)).T
    mesh = ax.pcolormesh(ks, omegas, grid, shading="nearest", cmap="magma")
    kk = np.linspace(0, 2 * math.pi, 400)
    ax.plot(kk, math.pi * np.abs(np.sin(kk)), "c--", lw=1, label=r"$\omega_l$")
    ax.plot(kk, 2 * math.pi * np.sin(kk / 2), "c-", lw=1, label=r"$\omega_u$")
    fig.colorbar(mesh, ax=ax, label=r"$S^{zz}_2(k,\omega)$")
    ax.set_xlabel(r"$k$")
    ax.set_ylabel(r"$\omega$")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def ed_spectrum(lines, sites, path) -> None:
    """Stem-style plot of finite-chain spectral lines, weight-coded."""
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    ks = [2 * math.pi * l.momentum_index / sites for l in lines]
    omegas = [l.omega for l in lines]
    weights = np.array([l.weight for l in lines])
    sc = ax.scatter(ks, omegas, s=8 + 200 * weights / max(weights.max(), 1e-12),
                    c=weights, cmap="viridis", norm=matplotlib.colors.LogNorm(
                        vmin=max(weights[weights > 0].min(), 1e-12)))
    fig.colorbar(sc, ax=ax, label="spectral weight")
    ax.set_xlabel(r"$k = 2\pi j / N$")
    ax.set_ylabel(r"$\omega$")
    ax.set_title(f"N = {sites} spectral lines")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def compare_figure(report, path) -> None:
    """ED lower band edge against pi |sin k| under the selected labeling."""
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    kk = np.linspace(0, 2 * math.pi, 400)
    ax.plot(kk, math.pi * np.abs(np.sin(kk)), "k-", lw=1,
            label=r"$\pi|\sin k|$")
    ks = [e.k_physical for e in report.entries if e.omega_min is not None]
    oms = [e.omega_min for e in report.entries if e.omega_min is not None]
    ax.plot(ks, oms, "ro", label=f"ED N={report.sites} lowest line")
    ax.set_xlabel(r"$k$")
    ax.set_ylabel(r"$\omega$")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def lineshape_figure(shape, path) -> None:
    """Fixed-k line shape with the band boundaries marked."""
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    ax.plot(shape.omega_grid, shape.values, "b.-", ms=3, lw=0.8)
    ax.axvline(shape.w_l, color="k", ls="--", lw=0.8)
    ax.axvline(shape.w_u, color="k", ls="--", lw=0.8)
    ax.set_xlabel(r"$\omega$")
    ax.set_ylabel(r"$S^{zz}_2$")
    ax.set_title(f"k = {shape.k:.4f}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
