"""Figure rendering for the command line report paths.

Figures are written straight to files with the Agg backend so the CLI works
headless; they sit alongside the delimited outputs and never replace them.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .intmat import IntMatrix2, check_bounded
from .oracle import VerificationReport, shadow_boundary_samples

FIG_SIZE = (5.0, 5.0)
FILL_GRID = 512


def render_shadow(matrix: IntMatrix2, path: str, samples: int = 400) -> None:
    """Shadow of the domain in modulus coordinates: filled region plus the
    two defining boundary curves, saved to path."""
    m = check_bounded(matrix)
    grid = np.linspace(1e-9, 1.0, FILL_GRID)
    r1, r2 = np.meshgrid(grid, grid, indexing="ij")
    inside = np.ones_like(r1, dtype=bool)
    with np.errstate(over="ignore", divide="ignore"):
        for p, q in m.rows():
            inside &= r1 ** p * r2 ** q < 1.0

    fig, ax = plt.subplots(figsize=FIG_SIZE)
    ax.contourf(r1, r2, inside.astype(float), levels=[0.5, 1.5], colors=["#9ecae1"])
    for index in (1, 2):
        pts = [(a, b) for a, b, c in shadow_boundary_samples(m, samples) if c == index]
        if pts:
            xs, ys = zip(*pts)
            ax.plot(xs, ys, lw=1.5, label=f"constraint {index}")
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(0.0, 1.0)
    ax.set_xlabel("|z1|")
    ax.set_ylabel("|z2|")
    ax.set_title(f"shadow of {m}")
    ax.set_aspect("equal")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_verification(report: VerificationReport, path: str) -> None:
    """Per-point relative error chart for a verification report."""
    fig, ax = plt.subplots(figsize=(6.0, 3.5))
    errs = [pt.rel_err for pt in report.points]
    xs = list(range(len(errs)))
    plotted = [(x, e) for x, e in zip(xs, errs) if e is not None and e > 0.0]
    if plotted:
        ax.semilogy(*zip(*plotted), "o", ms=4, label="relative error")
    missing = [x for x, e in zip(xs, errs) if e is None]
    for x in missing:
        ax.axvline(x, color="#d62728", lw=0.8)
    ax.axhline(report.tol, color="#2ca02c", ls="--", lw=1.0, label=f"tolerance {report.tol:g}")
    ax.set_xlabel("sample index")
    ax.set_ylabel("relative error")
    status = "PASS" if report.passed else "FAIL"
    ax.set_title(f"{report.oracle_kind} oracle vs closed form, {report.matrix} [{status}]")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
