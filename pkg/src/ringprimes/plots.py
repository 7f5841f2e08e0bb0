"""Figure rendering for scan output: comets, count maps, grids, moats.

Everything here draws to files through the Agg backend, so it works headless;
the CLI calls these when a ``--plot`` path is given.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_comet_figure(path, pairs, ring: str, row: int) -> None:
    """Scatter of (a, decomposition count) along a fixed row of targets."""
    a = [p[0] for p in pairs]
    c = [p[1] for p in pairs]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.scatter(a, c, s=6, color="#1f4e8c")
    ax.set_xlabel("a")
    ax.set_ylabel("ordered two-prime decompositions")
    ax.set_title(f"{ring}: counts along row {row}")
    ax.grid(True, alpha=0.25)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_count_matrix_figure(path, counts: dict, ring: str, lo: int, hi: int) -> None:
    """Heatmap of per-target counts over the scan rectangle; exceptions in red."""
    side = hi - lo + 1
    mat = np.full((side, side), np.nan)
    for (a, b), c in counts.items():
        mat[b - lo, a - lo] = c
    fig, ax = plt.subplots(figsize=(7, 6))
    shown = ax.imshow(
        mat, origin="lower", extent=(lo - 0.5, hi + 0.5, lo - 0.5, hi + 0.5), cmap="viridis"
    )
    zeros = [(a, b) for (a, b), c in counts.items() if c == 0]
    if zeros:
        ax.scatter([a for a, _ in zeros], [b for _, b in zeros], color="red", s=18, marker="x")
    fig.colorbar(shown, ax=ax, label="ordered decompositions")
    ax.set_xlabel("a")
    ax.set_ylabel("b")
    ax.set_title(f"{ring}: two-prime decomposition counts")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_grid_figure(path, grid: np.ndarray, window: int, title: str) -> None:
    """Black-and-white rendering of a boolean lattice window."""
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.imshow(
        grid.T,
        origin="lower",
        extent=(-window - 0.5, window + 0.5, -window - 0.5, window + 0.5),
        cmap="binary",
        interpolation="nearest",
    )
    ax.set_xlabel("a")
    ax.set_ylabel("b")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_moat_figure(path, report, grid: np.ndarray) -> None:
    """Primes in grey with the walked component overlaid in color."""
    w = report.window
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.imshow(
        grid.T,
        origin="lower",
        extent=(-w - 0.5, w + 0.5, -w - 0.5, w + 0.5),
        cmap="Greys",
        alpha=0.4,
        interpolation="nearest",
    )
    xs = [m.a for m in report.members]
    ys = [m.b for m in report.members]
    ax.scatter(xs, ys, s=10, color="#b01111")
    ax.set_xlabel("a")
    ax.set_ylabel("b")
    ax.set_title(
        f"{report.ring}: component from (1,1), step^2 <= {report.step_sq}, window {w}"
    )
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
