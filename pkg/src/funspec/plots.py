"""Figure rendering for report outputs.

Every report-producing CLI path can render a PNG next to its CSV/JSON
output; these helpers build the figures.  Rendering is headless (Agg)
and deterministic given the same inputs.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .bench import GaussianityDiag, ImseReport, MeanCltDiag
from .spectral import SpectralEstimate

_RC = {
    "figure.dpi": 120,
    "savefig.dpi": 150,
    "axes.grid": True,
    "grid.linewidth": 0.4,
    "grid.alpha": 0.5,
    "lines.linewidth": 1.2,
    "font.size": 9,
}


def save_figure(fig, path) -> None:
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)


def imse_figure(report: ImseReport):
    """Log-log ISE scatter with per-T medians and the fitted line."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5.0, 3.6))
        for t, values in report.ise_values.items():
            ax.plot([t] * len(values), values, ".", color="#bbbbbb", markersize=3)
        ts = sorted(report.medians)
        meds = [report.medians[t] for t in ts]
        ax.plot(ts, meds, "o", color="#377eb8", label="median")
        fit = [2.0 ** (report.intercept + report.slope * math.log2(t)) for t in ts]
        ax.plot(ts, fit, "-", color="#e41a1c",
                label=f"slope {report.slope:.3f}")
        ax.set_xscale("log", base=2)
        ax.set_yscale("log", base=2)
        ax.set_xlabel("series length T")
        ax.set_ylabel("integrated squared error")
        ax.legend()
        fig.tight_layout()
    return fig


def robustness_figure(m_list, gaps, sigmas):
    """Estimator gap against observation-grid size."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(4.6, 3.4))
        ax.plot(m_list, gaps, "o-", color="#377eb8")
        for m, g, s in zip(m_list, gaps, sigmas):
            ax.annotate(f"σ={s:.3g}", (m, g), textcoords="offset points",
                        xytext=(4, 4), fontsize=7)
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("observation points M")
        ax.set_ylabel("integrated squared estimator gap")
        fig.tight_layout()
    return fig


def amplitude_figure(est: SpectralEstimate, max_panels: int = 10):
    """Heatmaps of |kernel| for the first few estimated frequencies."""
    n = min(len(est.operators), max_panels)
    cols = min(n, 5)
    rows = (n + cols - 1) // cols
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(rows, cols, figsize=(2.1 * cols, 2.0 * rows),
                                 squeeze=False)
        extent = (0.0, 1.0, 0.0, 1.0)
        for i in range(rows * cols):
            ax = axes[i // cols][i % cols]
            if i >= n:
                ax.axis("off")
                continue
            amp = np.abs(est.operators[i].kernel)
            ax.imshow(amp, origin="lower", extent=extent, aspect="equal")
            ax.set_title(f"ω = {est.config.frequencies[i].omega:.3f}", fontsize=8)
            ax.set_xticks([])
            ax.set_yticks([])
        fig.tight_layout()
    return fig


def gaussianity_figure(diag: GaussianityDiag):
    """Histograms of the first probe's projections with the fitted normal."""
    z = diag.samples[:, 0]
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(1, 2, figsize=(7.0, 3.0))
        for ax, part, name in ((axes[0], z.real, "real part"),
                               (axes[1], z.imag, "imaginary part")):
            ax.hist(part, bins=40, density=True, color="#377eb8", alpha=0.75)
            mu, sd = float(np.mean(part)), float(np.std(part))
            xs = np.linspace(part.min(), part.max(), 200)
            ax.plot(xs, np.exp(-0.5 * ((xs - mu) / sd) ** 2) / (sd * math.sqrt(2 * math.pi)),
                    color="#e41a1c")
            ax.set_title(f"{name} of projection at ω = {diag.omega:.3f}", fontsize=8)
        fig.tight_layout()
    return fig


def clt_figure(diag: MeanCltDiag):
    """Per-probe empirical/analytic variance ratios of the scaled mean."""
    ratios = diag.ratios
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(4.2, 3.0))
        idx = np.arange(1, len(ratios) + 1)
        ax.bar(idx, ratios, color="#377eb8", width=0.6)
        ax.axhline(1.0, color="#e41a1c", linewidth=1.0)
        ax.set_xticks(idx)
        ax.set_xlabel("probe")
        ax.set_ylabel("variance ratio (empirical / analytic)")
        fig.tight_layout()
    return fig
