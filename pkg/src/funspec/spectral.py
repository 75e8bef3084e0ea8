"""Periodogram kernels, smoothing weights, and spectral density estimation.

The estimator implemented here is the weighted average of periodogram
kernels over the nonzero Fourier frequencies,

    est(ω) = (2π/T) * sum_{s=1}^{T-1} W_per(ω - 2πs/T) * p(2πs/T),

where ``p`` is the rank-1 periodogram kernel built from the series
transform and ``W_per`` is the 2π-periodization of a compactly supported
weight function rescaled by the bandwidth.  The s = 0 term is excluded:
it carries a mean contamination proportional to the Fejér kernel value.
No mean correction is applied inside the estimator.

Because the weights are nonnegative and each periodogram term is
Hermitian PSD, every estimate is Hermitian PSD by construction, and at
most O(T·bandwidth) summands are nonzero.

Inverting estimates back to autocovariance kernels, and the long-run
covariance (2π times the estimate at ω = 0), are also provided here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .errors import ConfigError, DimensionError, ResolutionError
from .fdft import TWO_PI, Frequency, fdft_all, fdft_at, _omega_of
from .numcore import (
    FunctionalSeries,
    Grid,
    KernelOperator,
    tensor,
)

_NORMALIZATION_TOL = 1e-6
_CHECK_POINTS = 20001


def fejer(t_len: int, omega: float) -> float:
    """Fejér kernel value (1/T) * (sin(Tω/2) / sin(ω/2))².

    Takes the limit value T at ω ≡ 0 (mod 2π); vanishes at all other
    Fourier frequencies 2πs/T and integrates to 2π over (-π, π].
    """
    if t_len < 1:
        raise ValueError("t_len must be >= 1")
    r = math.remainder(omega, TWO_PI)
    half = math.sin(0.5 * r)
    if half == 0.0:
        return float(t_len)
    ratio = math.sin(0.5 * t_len * r) / half
    return ratio * ratio / t_len


@dataclass(frozen=True)
class WeightFunction:
    """A smoothing weight: nonnegative, even, supported on [-1, 1], unit mass.

    ``evaluate`` must accept and return ndarrays.  The stated conditions
    are checked numerically at construction (mass to within 1e-6).
    """

    kind: str
    evaluate: Callable[[np.ndarray], np.ndarray]

    def __post_init__(self):
        xs = np.linspace(-1.5, 1.5, _CHECK_POINTS)
        vals = np.asarray(self.evaluate(xs), dtype=float)
        if vals.shape != xs.shape:
            raise ConfigError("weight evaluator must be vectorized")
        if not np.all(np.isfinite(vals)):
            raise ConfigError("weight function must be finite")
        if np.any(vals < 0):
            raise ConfigError("weight function must be nonnegative")
        if np.any(vals[np.abs(xs) >= 1.0] != 0.0):
            raise ConfigError("weight function must vanish for |x| >= 1")
        if np.max(np.abs(vals - vals[::-1])) > 1e-9 * max(1.0, vals.max()):
            raise ConfigError("weight function must be even")
        mass = float(np.trapezoid(vals, xs))
        if abs(mass - 1.0) > _NORMALIZATION_TOL:
            raise ConfigError(f"weight function mass is {mass:.8f}, expected 1")

    @classmethod
    def epanechnikov(cls) -> "WeightFunction":
        """W(x) = 3/4 (1 - x²) on (-1, 1)."""

        def evaluate(x):
            x = np.asarray(x, dtype=float)
            return np.where(np.abs(x) < 1.0, 0.75 * (1.0 - x * x), 0.0)

        return cls("epanechnikov", evaluate)

    @classmethod
    def bartlett(cls) -> "WeightFunction":
        """Triangular weight W(x) = 1 - |x| on (-1, 1)."""

        def evaluate(x):
            x = np.asarray(x, dtype=float)
            return np.maximum(0.0, 1.0 - np.abs(x))

        return cls("bartlett", evaluate)

    @classmethod
    def custom(cls, xs: Sequence[float], values: Sequence[float]) -> "WeightFunction":
        """Tabulated weight, linearly interpolated and normalized to unit mass."""
        xs = np.asarray(xs, dtype=float)
        values = np.asarray(values, dtype=float)
        if xs.ndim != 1 or xs.shape != values.shape or xs.size < 2:
            raise ConfigError("custom weight needs matching 1-d tables")
        fine = np.linspace(-1.0, 1.0, _CHECK_POINTS)
        mass = np.trapezoid(np.interp(fine, xs, values, left=0.0, right=0.0), fine)
        if mass <= 0:
            raise ConfigError("custom weight table has nonpositive mass")

        def evaluate(x):
            x = np.asarray(x, dtype=float)
            out = np.interp(x, xs, values, left=0.0, right=0.0) / mass
            return np.where(np.abs(x) < 1.0, out, 0.0)

        return cls("custom", evaluate)

    @classmethod
    def by_name(cls, name: str) -> "WeightFunction":
        if name == "epanechnikov":
            return cls.epanechnikov()
        if name == "bartlett":
            return cls.bartlett()
        raise ConfigError(f"unknown weight function {name!r}")


def default_bandwidth(t_len: int) -> float:
    """The default bandwidth schedule T^(-1/5)."""
    return float(t_len) ** -0.2


@dataclass(frozen=True)
class EstimatorConfig:
    """Bandwidth, weight function, and evaluation frequencies."""

    bandwidth: float
    weight: WeightFunction
    frequencies: tuple

    def __post_init__(self):
        if not (0.0 < self.bandwidth <= math.pi):
            raise ConfigError(f"bandwidth must be in (0, pi], got {self.bandwidth}")
        freqs = tuple(
            f if isinstance(f, Frequency) else Frequency(float(f))
            for f in self.frequencies
        )
        object.__setattr__(self, "frequencies", freqs)
        if len(freqs) == 0:
            raise ConfigError("frequency list must not be empty")

    @property
    def omegas(self) -> np.ndarray:
        return np.array([f.omega for f in self.frequencies])


def periodized_weight(weight: WeightFunction, bandwidth: float, x) -> float | np.ndarray:
    """2π-periodization of the bandwidth-rescaled weight.

    Computes sum_j (1/B) W((x + 2πj)/B).  With support [-1, 1] and
    B <= π, only the terms j in {-1, 0, 1} relative to the reduced
    argument can be nonzero.
    """
    if not (0.0 < bandwidth <= math.pi):
        raise ConfigError(f"bandwidth must be in (0, pi], got {bandwidth}")
    x = np.asarray(x, dtype=float)
    reduced = x - TWO_PI * np.round(x / TWO_PI)
    out = np.zeros_like(reduced)
    for j in (-1.0, 0.0, 1.0):
        out += weight.evaluate((reduced + TWO_PI * j) / bandwidth)
    out /= bandwidth
    return float(out) if out.ndim == 0 else out


def periodogram(x: FunctionalSeries, omega) -> KernelOperator:
    """Rank-1 periodogram kernel: the transform tensored with itself.

    Hermitian and PSD; its HS norm equals the squared L² norm of the
    transform at ``omega``.
    """
    v = fdft_at(x, omega)
    return tensor(v, v)


@dataclass(frozen=True)
class SpectralEstimate:
    """Estimated spectral density operators, one per requested frequency.

    ``operators[i]`` corresponds to ``config.frequencies[i]``.  Each
    operator is Hermitian PSD up to roundoff; the estimate at -ω is the
    elementwise conjugate of the estimate at ω.
    """

    config: EstimatorConfig
    grid: Grid
    t_len: int
    operators: tuple

    def operator_at(self, omega, tol: float = 1e-12) -> KernelOperator:
        om = _omega_of(omega)
        for f, op in zip(self.config.frequencies, self.operators):
            if abs(f.omega - om) <= tol:
                return op
        raise KeyError(f"no estimate at omega={om}")


def estimate_sdo(x: FunctionalSeries, cfg: EstimatorConfig) -> SpectralEstimate:
    """Smoothed spectral density estimate at the configured frequencies.

    Averages the periodogram kernels on the Fourier grid s = 1..T-1 with
    periodized weights centered at each requested ω.  Arbitrary ω are
    allowed, not only Fourier frequencies.

    Raises
    ------
    ConfigError
        If T < 2 (the smoothing sum would be empty).
    """
    t_len = x.t_len
    if t_len < 2:
        raise ConfigError("estimation needs a series of length T >= 2")
    transform = fdft_all(x).values            # T x M, row s at 2πs/T
    s = np.arange(1, t_len)
    fourier = TWO_PI * s / t_len
    ops = []
    for f in cfg.frequencies:
        wts = periodized_weight(cfg.weight, cfg.bandwidth, f.omega - fourier)
        nz = np.nonzero(wts)[0]
        if nz.size == 0:
            kernel = np.zeros((x.grid.m, x.grid.m), dtype=complex)
        else:
            rows = transform[s[nz]]
            kernel = (TWO_PI / t_len) * (rows.T * wts[nz]) @ rows.conj()
        ops.append(KernelOperator(x.grid, kernel))
    return SpectralEstimate(cfg, x.grid, t_len, tuple(ops))


def long_run_cov(x: FunctionalSeries, cfg: EstimatorConfig) -> KernelOperator:
    """Long-run covariance estimate: 2π times the estimate at ω = 0.

    Real and symmetric up to roundoff (returned in complex storage).
    """
    at_zero = replace(cfg, frequencies=(Frequency(0.0),))
    est = estimate_sdo(x, at_zero)
    return KernelOperator(x.grid, TWO_PI * est.operators[0].kernel)


def empirical_autocov(x: FunctionalSeries, t: int) -> KernelOperator:
    """Mean-corrected empirical autocovariance kernel at lag ``t``.

    (1/T) * sum over valid s of (X_{s+t} - mean) ⊗ (X_s - mean); the
    biased (divide-by-T) form.  Satisfies r(-t)(τ,σ) = r(t)(σ,τ).

    Raises
    ------
    ValueError
        If |t| >= T.
    """
    t_len = x.t_len
    if abs(t) >= t_len:
        raise ValueError(f"lag {t} out of range for series of length {t_len}")
    centered = x.data - x.data.mean(axis=0)
    lag = abs(t)
    kernel = (centered[lag:].T @ centered[: t_len - lag]) / t_len
    if t < 0:
        kernel = kernel.T
    return KernelOperator(x.grid, kernel.astype(complex))


def autocov_from_sdo(est: SpectralEstimate, t: int) -> KernelOperator:
    """Invert a spectral estimate to the lag-``t`` autocovariance kernel.

    Approximates ∫_0^{2π} est(α) e^{itα} dα by the trapezoid rule on the
    estimate's frequency grid, which must be the uniform grid
    ω_k = 2πk/N, k = 0..N-1 (periodic, so all weights are 2π/N).  Real
    up to roundoff and quadrature error for real input series.

    Raises
    ------
    ResolutionError
        If the frequency grid is not the uniform circle or has fewer
        than 2|t| + 2 points.
    """
    omegas = est.config.omegas
    n = omegas.size
    if n < 2 * abs(t) + 2:
        raise ResolutionError(
            f"need at least {2 * abs(t) + 2} frequencies for lag {t}, have {n}"
        )
    expected = TWO_PI * np.arange(n) / n
    if np.max(np.abs(omegas - expected)) > 1e-9:
        raise ResolutionError("estimate must cover the uniform grid 2*pi*k/N on [0, 2*pi)")
    phases = np.exp(1j * t * omegas)
    kernel = np.zeros((est.grid.m, est.grid.m), dtype=complex)
    for phase, op in zip(phases, est.operators):
        kernel += phase * op.kernel
    kernel *= TWO_PI / n
    return KernelOperator(est.grid, kernel)
