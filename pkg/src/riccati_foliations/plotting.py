"""Matplotlib figures for holonomy reports.

Every function draws on ``ax`` when given (or a new figure) and returns
``(fig, ax)``.
"""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _axes(ax, figsize=(5, 5)):
    if ax is None:
        fig, ax = plt.subplots(figsize=figsize)
    else:
        fig = ax.figure
    return fig, ax


def plot_base_plane(fibers: Sequence[complex], loops=(), base_point=None, ax=None,
                    labels: Sequence[str] | None = None):
    """Invariant fibers (crosses) and generator loops in the base plane."""
    fig, ax = _axes(ax)
    colors = plt.cm.viridis(np.linspace(0, 0.9, max(len(loops), 1)))
    for i, loop in enumerate(loops):
        pts = loop.sample(128)
        label = labels[i] if labels is not None else f"loop {i + 1}"
        ax.plot(pts.real, pts.imag, color=colors[i], lw=1.2, label=label)
    f = np.asarray(list(fibers), dtype=complex)
    if f.size:
        ax.plot(f.real, f.imag, "x", color="crimson", ms=9, mew=2, label="invariant fiber")
    if base_point is not None:
        ax.plot([complex(base_point).real], [complex(base_point).imag], "o",
                color="black", label="base point")
    ax.set_xlabel(r"Re $x$")
    ax.set_ylabel(r"Im $x$")
    ax.set_aspect("equal", adjustable="datalim")
    ax.legend(loc="best", fontsize=7)
    ax.set_title("Base plane")
    return fig, ax


def plot_lift(trajectory, sample: int = 0, ax=None):
    """Fiber coordinates ``W_0/W_2`` of one lifted point, per step.

    Plotted in the Riemann-sphere friendly form ``|w| / (1 + |w|)``.
    """
    fig, ax = _axes(ax, figsize=(6, 3.5))
    W = np.array([w[sample] for w in trajectory.W])
    steps = np.arange(len(W))
    for k, name in enumerate(("y", "z")):
        with np.errstate(divide="ignore", invalid="ignore"):
            w = W[:, k] / W[:, 2]
        mag = np.abs(w)
        ax.plot(steps, np.where(np.isfinite(mag), mag / (1 + mag), 1.0), lw=1, label=name)
    ax.set_xlabel("accepted step")
    ax.set_ylabel(r"$|w|/(1+|w|)$")
    ax.set_ylim(0, 1)
    ax.legend(loc="best", fontsize=8)
    ax.set_title(f"Lift of sample point {sample}")
    return fig, ax


def plot_spectra(matrices: Sequence[np.ndarray], labels: Sequence[str] | None = None, ax=None):
    """Eigenvalue ratios of each generator (scale-free projective invariant)."""
    fig, ax = _axes(ax)
    t = np.linspace(0, 2 * np.pi, 200)
    ax.plot(np.cos(t), np.sin(t), color="0.8", lw=0.8)
    markers = "osD^v<>p*h"
    for i, m in enumerate(matrices):
        ev = np.linalg.eigvals(np.asarray(m, dtype=complex))
        ev = ev / ev[np.argmax(np.abs(ev))]
        label = labels[i] if labels is not None else f"H{i + 1}"
        ax.plot(ev.real, ev.imag, markers[i % len(markers)], ms=7, alpha=0.8, label=label)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_aspect("equal", adjustable="datalim")
    ax.legend(loc="best", fontsize=7)
    ax.set_title("Generator spectra (normalized)")
    return fig, ax


def save(fig, path) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
