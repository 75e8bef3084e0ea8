"""Frequency-domain analysis of stationary functional time series.

Grid-sampled curves, their discrete Fourier transform, periodogram
kernels, smoothed spectral-density-operator estimates, autocovariance
recovery, linear-process simulation with analytic oracles, discrete
noisy observation, and Monte Carlo benchmark experiments.
"""

__version__ = "0.1.0"

from .numcore import (
    FunctionalSeries,
    Grid,
    GridFunction,
    KernelOperator,
    apply_operator,
    hs_norm,
    inner_product,
    is_hermitian,
    is_psd,
    tensor,
)
from .fdft import FdftSet, Frequency, fdft_all, fdft_at, mean_function
from .spectral import (
    EstimatorConfig,
    SpectralEstimate,
    WeightFunction,
    autocov_from_sdo,
    default_bandwidth,
    empirical_autocov,
    estimate_sdo,
    fejer,
    long_run_cov,
    periodized_weight,
    periodogram,
)
from .simulate import (
    CoefficientSpec,
    InnovationModel,
    LinearProcessSpec,
    make_coefficients,
    make_process,
    reseed,
    simulate_process,
    true_autocov,
    true_sdo,
)
from .sampling import SamplingScheme, observe, robustness_gap
from .bench import (
    GaussianityDiag,
    ImseReport,
    MeanCltDiag,
    gamma_frequencies,
    gamma_weights,
    gaussianity_diag,
    imse_experiment,
    ise,
    mean_clt_diag,
    unbiasedness_check,
)

__all__ = [
    "__version__",
    "FunctionalSeries",
    "Grid",
    "GridFunction",
    "KernelOperator",
    "apply_operator",
    "hs_norm",
    "inner_product",
    "is_hermitian",
    "is_psd",
    "tensor",
    "FdftSet",
    "Frequency",
    "fdft_all",
    "fdft_at",
    "mean_function",
    "EstimatorConfig",
    "SpectralEstimate",
    "WeightFunction",
    "autocov_from_sdo",
    "default_bandwidth",
    "empirical_autocov",
    "estimate_sdo",
    "fejer",
    "long_run_cov",
    "periodized_weight",
    "periodogram",
    "CoefficientSpec",
    "InnovationModel",
    "LinearProcessSpec",
    "make_coefficients",
    "make_process",
    "reseed",
    "simulate_process",
    "true_autocov",
    "true_sdo",
    "SamplingScheme",
    "observe",
    "robustness_gap",
    "GaussianityDiag",
    "ImseReport",
    "MeanCltDiag",
    "gamma_frequencies",
    "gamma_weights",
    "gaussianity_diag",
    "imse_experiment",
    "ise",
    "mean_clt_diag",
    "unbiasedness_check",
]
