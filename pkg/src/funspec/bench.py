"""Monte Carlo experiments: IMSE decay, unbiasedness, asymptotic diagnostics.

The error metric throughout is the squared Hilbert–Schmidt distance
integrated over the ten-point frequency grid ω_j = πj/10, j = 0..9,
doubled to account for the conjugate-symmetric half of the circle.  The
quadrature puts half weight π/20 on the j = 0 endpoint and π/10 on the
rest (the grid stops short of π, whose endpoint weight is dropped).

All experiments derive per-replication seeds from a master seed by
index, so reports are bit-reproducible for any worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np
from scipy import stats

from ._parallel import indexed_map
from .errors import ConfigError, DimensionError
from .fdft import TWO_PI, Frequency, fdft_at, mean_function
from .numcore import GridFunction, KernelOperator, apply_operator, inner_product
from .rng import derive_seed
from .simulate import (
    LinearProcessSpec,
    make_process,
    reseed,
    simulate_process,
    true_autocov,
    true_sdo,
)
from .spectral import (
    EstimatorConfig,
    SpectralEstimate,
    WeightFunction,
    default_bandwidth,
    estimate_sdo,
    periodogram,
)

GAMMA_SIZE = 10


def gamma_frequencies() -> tuple:
    """The evaluation grid ω_j = πj/10, j = 0..9."""
    return tuple(Frequency(math.pi * j / GAMMA_SIZE) for j in range(GAMMA_SIZE))


def gamma_weights() -> np.ndarray:
    """Quadrature weights on the gamma grid: π/20 at j = 0, else π/10."""
    w = np.full(GAMMA_SIZE, math.pi / GAMMA_SIZE)
    w[0] *= 0.5
    return w


def default_config(t_len: int, weight: WeightFunction | None = None) -> EstimatorConfig:
    """Estimator config on the gamma grid with the T^(-1/5) bandwidth."""
    return EstimatorConfig(
        bandwidth=default_bandwidth(t_len),
        weight=weight if weight is not None else WeightFunction.epanechnikov(),
        frequencies=gamma_frequencies(),
    )


def _hs2(diff: np.ndarray, weights: np.ndarray) -> float:
    return float(np.sum((np.abs(diff) ** 2) * np.outer(weights, weights)))


def ise(est: SpectralEstimate, truth: Sequence[KernelOperator]) -> float:
    """Integrated squared HS error of an estimate over the gamma grid.

    ``truth`` supplies one reference operator per estimate frequency, in
    the same order.  Returns 2 * sum_j w_j * ||est_j - truth_j||_HS².

    Raises
    ------
    DimensionError
        If the estimate is not on the gamma grid or the truth list does
        not match it.
    """
    gamma = gamma_frequencies()
    freqs = est.config.frequencies
    if len(freqs) != len(gamma) or any(
        abs(f.omega - g.omega) > 1e-12 for f, g in zip(freqs, gamma)
    ):
        raise DimensionError("estimate is not on the gamma frequency grid")
    if len(truth) != len(freqs):
        raise DimensionError("need one truth operator per frequency")
    gw = gamma_weights()
    qw = est.grid.weights
    total = 0.0
    for wj, op, ref in zip(gw, est.operators, truth):
        if not ref.grid.matches(est.grid):
            raise DimensionError("truth operator on a different grid")
        total += wj * _hs2(op.kernel - ref.kernel, qw)
    return 2.0 * total


@dataclass(frozen=True)
class ImseReport:
    """Per-T ISE samples, medians, and the fitted log-log slope."""

    t_list: tuple
    ise_values: dict
    medians: dict
    slope: float
    intercept: float
    config: dict

    def to_json_dict(self) -> dict:
        return {
            "t_list": list(self.t_list),
            "ise_values": {str(t): list(v) for t, v in self.ise_values.items()},
            "medians": {str(t): m for t, m in self.medians.items()},
            "slope": self.slope,
            "intercept": self.intercept,
            "config": self.config,
        }


def fit_loglog_slope(t_list: Sequence[int], medians: Sequence[float]) -> tuple[float, float]:
    """Least-squares line of log2(median) on log2(T): (slope, intercept).

    A single point has no slope; returns (nan, log2 median) then.
    """
    if len(t_list) < 2:
        return float("nan"), float(np.log2(medians[0]))
    coeffs = np.polyfit(np.log2(np.asarray(t_list, float)), np.log2(medians), 1)
    return float(coeffs[0]), float(coeffs[1])


def imse_experiment(
    spec: LinearProcessSpec,
    t_list: Sequence[int],
    reps: int,
    cfg_rule: Callable[[int], EstimatorConfig] | None = None,
    master_seed: int = 0,
    redraw_operators: bool = False,
    threads: int = 1,
) -> ImseReport:
    """Estimate the ISE decay of the spectral estimator across sample sizes.

    For each T in ``t_list``, runs ``reps`` independent replications:
    simulate a stretch, estimate on the gamma grid with the bandwidth
    rule (default T^(-1/5), Epanechnikov), and score against the exact
    spectral density of the generating process.  Fits a least-squares
    line through the per-T medians on a log-log scale.

    Replication (T, r) draws innovations from the seed derived from
    (master_seed, T, r).  With ``redraw_operators`` the coefficient
    operators are redrawn per replication (requires the process to carry
    its coefficient recipe); by default one draw is shared by the whole
    experiment.
    """
    if not t_list:
        raise ConfigError("t_list must not be empty")
    if reps < 2:
        raise ConfigError("need at least 2 replications")
    if redraw_operators and spec.coeff_spec is None:
        raise ConfigError("redraw_operators requires a process built from a CoefficientSpec")
    rule = cfg_rule if cfg_rule is not None else default_config
    gamma = gamma_frequencies()
    base_truth = [true_sdo(spec, f.omega) for f in gamma]
    ise_values: dict[int, list[float]] = {}
    for t_len in t_list:
        cfg = rule(t_len)

        def one(r: int, t_len=t_len, cfg=cfg) -> float:
            sim = reseed(spec, derive_seed(master_seed, t_len, r))
            if redraw_operators:
                cspec = replace(
                    spec.coeff_spec, seed=derive_seed(master_seed, t_len, r, 1)
                )
                sim = reseed(
                    make_process(spec.innovation, cspec, spec.grid, spec.seed),
                    derive_seed(master_seed, t_len, r),
                )
                truth = [true_sdo(sim, f.omega) for f in gamma]
            else:
                truth = base_truth
            x = simulate_process(sim, t_len)
            return ise(estimate_sdo(x, cfg), truth)

        ise_values[int(t_len)] = indexed_map(one, reps, threads)
    medians = {t: float(np.median(v)) for t, v in ise_values.items()}
    slope, intercept = fit_loglog_slope(list(medians), list(medians.values()))
    return ImseReport(
        t_list=tuple(int(t) for t in t_list),
        ise_values=ise_values,
        medians=medians,
        slope=slope,
        intercept=intercept,
        config={
            "reps": reps,
            "master_seed": master_seed,
            "redraw_operators": redraw_operators,
            "process_hash": spec.content_hash(),
        },
    )


def unbiasedness_check(
    spec: LinearProcessSpec,
    t_len: int,
    s_index: int,
    reps: int,
    master_seed: int = 0,
    threads: int = 1,
) -> float:
    """HS-relative distance of the Monte Carlo mean periodogram from truth.

    Averages ``reps`` periodograms at the Fourier frequency 2πs/T and
    compares with the exact spectral density there.  Replication seeds
    derive from (master_seed, r), independent of T, so runs at different
    T share innovation draws sample-for-sample.

    Raises
    ------
    ConfigError
        If ``s_index`` is 0 modulo T (the mean-contaminated frequency).
    """
    if s_index % t_len == 0:
        raise ConfigError("s_index must not be 0 mod T")
    omega = TWO_PI * s_index / t_len

    def one(r: int) -> np.ndarray:
        x = simulate_process(reseed(spec, derive_seed(master_seed, r)), t_len)
        return periodogram(x, omega).kernel

    mean_p = sum(indexed_map(one, reps, threads)) / reps
    truth = true_sdo(spec, omega).kernel
    qw = spec.grid.weights
    return math.sqrt(_hs2(mean_p - truth, qw) / _hs2(truth, qw))


@dataclass(frozen=True)
class ProbeStats:
    """Moments of one projected transform across replications."""

    skew_re: float
    skew_im: float
    exkurt_re: float
    exkurt_im: float
    corr_re_im: float
    var_re: float
    var_im: float
    ref_half_var: float


@dataclass(frozen=True)
class GaussianityDiag:
    """Marginal Gaussianity diagnostics for the transform at one frequency.

    ``cross_corr`` is the largest absolute correlation between the
    projections at ``omega`` and at the distant frequency
    ``cross_omega`` (first probe), which should vanish asymptotically.
    ``samples`` holds the raw projections (reps x probes, complex) for
    plotting.
    """

    omega: float
    cross_omega: float
    probes: tuple
    cross_corr: float
    samples: np.ndarray
    cross_samples: np.ndarray


def gaussianity_diag(
    spec: LinearProcessSpec,
    t_len: int,
    omega: Frequency,
    probes: Sequence[GridFunction],
    reps: int,
    master_seed: int = 0,
    cross_index: int | None = None,
    threads: int = 1,
) -> GaussianityDiag:
    """Collect projections of the transform and their normality diagnostics.

    For each replication, projects the transform at ``omega`` onto every
    probe function; reports skewness, excess kurtosis, and real/imag
    correlation per probe, the sample variances against the reference
    value (half the spectral quadratic form, the asymptotic variance of
    each part), and the correlation with the transform at a second,
    distant Fourier frequency.
    """
    s1 = int(round(omega.omega * t_len / TWO_PI))
    if abs(omega.omega - TWO_PI * s1 / t_len) > 1e-9 or s1 % t_len == 0:
        raise ConfigError("omega must be a nonzero Fourier frequency for this T")
    if not probes:
        raise ConfigError("need at least one probe function")
    s2 = cross_index if cross_index is not None else (3 * t_len) // 8
    if s2 % t_len == 0 or s2 == s1:
        raise ConfigError("cross frequency must be nonzero and distinct")
    om2 = TWO_PI * s2 / t_len

    def one(r: int) -> tuple:
        x = simulate_process(reseed(spec, derive_seed(master_seed, r)), t_len)
        v1 = fdft_at(x, omega.omega)
        v2 = fdft_at(x, om2)
        return (
            [inner_product(v1, p) for p in probes],
            inner_product(v2, probes[0]),
        )

    rows = indexed_map(one, reps, threads)
    samples = np.array([row[0] for row in rows])          # reps x probes
    cross = np.array([row[1] for row in rows])

    per_probe = []
    truth = true_sdo(spec, omega.omega)
    for j, probe in enumerate(probes):
        z = samples[:, j]
        ref = 0.5 * inner_product(apply_operator(truth, probe), probe).real
        per_probe.append(
            ProbeStats(
                skew_re=float(stats.skew(z.real)),
                skew_im=float(stats.skew(z.imag)),
                exkurt_re=float(stats.kurtosis(z.real)),
                exkurt_im=float(stats.kurtosis(z.imag)),
                corr_re_im=float(np.corrcoef(z.real, z.imag)[0, 1]),
                var_re=float(np.var(z.real, ddof=1)),
                var_im=float(np.var(z.imag, ddof=1)),
                ref_half_var=float(ref),
            )
        )
    z1 = samples[:, 0]
    cross_corr = max(
        abs(float(np.corrcoef(a, b)[0, 1]))
        for a in (z1.real, z1.imag)
        for b in (cross.real, cross.imag)
    )
    return GaussianityDiag(
        omega=omega.omega,
        cross_omega=om2,
        probes=tuple(per_probe),
        cross_corr=cross_corr,
        samples=samples,
        cross_samples=cross,
    )


@dataclass(frozen=True)
class MeanCltDiag:
    """Scaled-mean variances against the long-run quadratic form."""

    empirical_var: tuple
    reference_var: tuple
    ratios: tuple
    samples: np.ndarray


def mean_clt_diag(
    spec: LinearProcessSpec,
    t_len: int,
    probes: Sequence[GridFunction],
    reps: int,
    master_seed: int = 0,
    threads: int = 1,
) -> MeanCltDiag:
    """Compare var(sqrt(T) <sample mean, probe>) with the analytic limit.

    The reference is the quadratic form of the lag-summed autocovariance
    (the long-run covariance) at each probe.  The process has mean zero
    by construction, so no centering term enters.
    """
    if not probes:
        raise ConfigError("need at least one probe function")

    def one(r: int) -> list[float]:
        x = simulate_process(reseed(spec, derive_seed(master_seed, r)), t_len)
        mu = mean_function(x)
        return [math.sqrt(t_len) * inner_product(mu, p).real for p in probes]

    samples = np.array(indexed_map(one, reps, threads))   # reps x probes
    lag_sum = sum(
        true_autocov(spec, t).kernel for t in range(-spec.q, spec.q + 1)
    )
    lrc = KernelOperator(spec.grid, lag_sum)
    reference = tuple(
        float(inner_product(apply_operator(lrc, p), p).real) for p in probes
    )
    empirical = tuple(float(np.var(samples[:, j], ddof=1)) for j in range(len(probes)))
    ratios = tuple(e / r for e, r in zip(empirical, reference))
    return MeanCltDiag(
        empirical_var=empirical,
        reference_var=reference,
        ratios=ratios,
        samples=samples,
    )
