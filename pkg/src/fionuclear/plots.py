"""Static SVG plots derived from run artifacts.

Plots are outputs only, never inputs to any computation, and are
rendered headlessly with a fixed hash salt and no embedded timestamps so
repeated runs produce identical files.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .grid import SampledFunction

plt.rcParams["svg.hashsalt"] = "fio-nuclear"

_SAVE_OPTS = {"format": "svg", "metadata": {"Date": None}, "bbox_inches": "tight"}


def output_magnitude_plot(f: SampledFunction, path) -> Path:
    """Line plot of |f| against its sample nodes."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6.0, 3.2))
    ax.plot(f.nodes, np.abs(f.values), lw=1.2)
    ax.set_xlabel("x")
    ax.set_ylabel("|Ff(x)|")
    ax.set_title("operator output magnitude")
    ax.grid(True, alpha=0.3)
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)
    return path


def eigenvalue_scatter(eigenvalues, path) -> Path:
    """Complex-plane scatter of the weighted kernel matrix spectrum."""
    path = Path(path)
    ev = np.asarray(eigenvalues, dtype=np.complex128)
    fig, ax = plt.subplots(figsize=(4.2, 4.2))
    ax.scatter(ev.real, ev.imag, s=12, alpha=0.8)
    ax.axhline(0.0, color="gray", lw=0.5)
    ax.axvline(0.0, color="gray", lw=0.5)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title("eigenvalues")
    ax.set_aspect("equal", adjustable="datalim")
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)
    return path


def residual_vs_rank_plot(singular_values, path) -> Path:
    """Best-possible reconstruction residual against truncation rank.

    By the optimality of the truncated factorization, the residual of a
    rank-K cut in the spectral norm is the (K+1)-th singular value, so
    the curve plotted is the singular-value tail itself.
    """
    path = Path(path)
    s = np.asarray(singular_values, dtype=float)
    ranks = np.arange(1, s.size)
    tail = np.maximum(s[1:], np.finfo(float).tiny)
    fig, ax = plt.subplots(figsize=(6.0, 3.2))
    ax.semilogy(ranks, tail, marker=".", ms=4, lw=1.0)
    ax.set_xlabel("rank K")
    ax.set_ylabel("residual after rank-K cut")
    ax.set_title("decomposition residual vs rank")
    ax.grid(True, which="both", alpha=0.3)
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)
    return path
