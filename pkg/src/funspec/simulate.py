"""Stationary linear functional process generators with analytic oracles.

Processes are finite moving averages

    X_t = sum_{s=0}^{q} A_s ε_{t-s},

where the innovations ε_t are built from a truncated Karhunen–Loève
expansion over the half-integer sine system e_k(τ) = √2 sin((k-1/2)πτ):
either Brownian-motion eigenvalues λ_k = 1/((k-1/2)²π²) ("wiener_kl")
or flat unit variances ("white_noise_kl").  The coefficient operators
A_s map the K innovation coordinates into the span of the first
``out_dim`` members of the same sine system, so the whole construction
reduces to matrix algebra on coefficients; curves only materialize on
the grid at the end.

Because the model is a finite MA, a burn-in of exactly q presamples
makes the emitted stretch strictly stationary, and the second-order
truth is available in closed form: ``true_autocov`` from the finite sum
over coefficient products, ``true_sdo`` from the transfer function of
the filter.  Both oracles use the covariance of the innovations as
actually truncated (level K), never the K → ∞ limit, so they match the
generator exactly.

Randomness: coefficients draw from the lane-0 substream of their seed;
innovations of a simulation from the lane-1 substream of the process
seed, as a single standard-normal block.  Blocks are prefix-stable, so
a longer stretch from the same seed extends a shorter one.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError, DimensionError
from .fdft import TWO_PI
from .numcore import FunctionalSeries, Grid, GridFunction, KernelOperator
from .rng import LANE_COEFF, LANE_INNOVATION, substream

_PSI_ORTHO_TOL = 1e-4

WIENER_KL = "wiener_kl"
WHITE_NOISE_KL = "white_noise_kl"


def sine_basis_matrix(grid: Grid, count: int) -> np.ndarray:
    """Values of e_k(τ) = √2 sin((k-1/2)πτ), k = 1..count, as an M x count matrix."""
    k = np.arange(1, count + 1)
    return math.sqrt(2.0) * np.sin(np.outer(grid.points, k - 0.5) * math.pi)


@dataclass(frozen=True)
class InnovationModel:
    """Karhunen–Loève innovation model over the half-integer sine system."""

    kind: str
    k_trunc: int = 1000

    def __post_init__(self):
        if self.kind not in (WIENER_KL, WHITE_NOISE_KL):
            raise ConfigError(f"unknown innovation kind {self.kind!r}")
        if self.k_trunc < 1:
            raise ConfigError("k_trunc must be >= 1")

    def eigenvalues(self) -> np.ndarray:
        k = np.arange(1, self.k_trunc + 1)
        if self.kind == WIENER_KL:
            return 1.0 / ((k - 0.5) ** 2 * math.pi**2)
        return np.ones(self.k_trunc)

    def covariance_kernel(self, grid: Grid) -> KernelOperator:
        """The truncated innovation covariance sum_k λ_k e_k(τ) e_k(σ)."""
        basis = sine_basis_matrix(grid, self.k_trunc)
        kernel = (basis * self.eigenvalues()) @ basis.T
        return KernelOperator(grid, kernel)


@dataclass(frozen=True)
class CoefficientSpec:
    """Random-coefficient recipe: q+1 Gaussian matrices with row decay.

    Entry (j, k) of every matrix is N(0, j^(-2 alpha)) distributed,
    1-indexed in j, drawn deterministically from ``seed``.
    """

    q: int
    out_dim: int
    alpha: float
    seed: int

    def __post_init__(self):
        if self.q < 0:
            raise ConfigError("MA order q must be >= 0")
        if self.out_dim < 1:
            raise ConfigError("out_dim must be >= 1")
        if self.alpha < 0:
            raise ConfigError("alpha must be >= 0")


def make_coefficients(spec: CoefficientSpec, k_trunc: int) -> list[np.ndarray]:
    """Draw the q+1 coefficient matrices of shape (out_dim, k_trunc)."""
    gen = substream(spec.seed, LANE_COEFF)
    row_std = (np.arange(1, spec.out_dim + 1) ** (-spec.alpha))[:, None]
    return [
        gen.standard_normal((spec.out_dim, k_trunc)) * row_std
        for _ in range(spec.q + 1)
    ]


@dataclass(frozen=True)
class LinearProcessSpec:
    """A fully materialized linear process: coefficients, basis, grid, seed.

    ``coeffs[s]`` is A_s in the (output sine basis) x (innovation sine
    basis) coordinates; ``psi_basis`` holds the output basis curves,
    orthonormal under the grid quadrature to within 1e-4.
    """

    innovation: InnovationModel
    coeffs: tuple
    psi_basis: tuple
    grid: Grid
    seed: int
    coeff_spec: CoefficientSpec | None = None

    def __post_init__(self):
        coeffs = tuple(np.array(a, dtype=float) for a in self.coeffs)
        for a in coeffs:
            a.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "psi_basis", tuple(self.psi_basis))
        if len(coeffs) < 1:
            raise ConfigError("need at least the A_0 coefficient matrix")
        shape = coeffs[0].shape
        if any(a.shape != shape for a in coeffs):
            raise DimensionError("all coefficient matrices must share one shape")
        if shape != (len(self.psi_basis), self.innovation.k_trunc):
            raise DimensionError(
                f"coefficients must be {len(self.psi_basis)} x "
                f"{self.innovation.k_trunc}, got {shape}"
            )
        gram = self._psi_matrix().T @ (self.grid.weights[:, None] * self._psi_matrix())
        if np.max(np.abs(gram - np.eye(len(self.psi_basis)))) > _PSI_ORTHO_TOL:
            raise ConfigError("psi basis is not orthonormal under grid quadrature")

    def _psi_matrix(self) -> np.ndarray:
        return np.column_stack([p.values.real for p in self.psi_basis])

    @property
    def q(self) -> int:
        return len(self.coeffs) - 1

    @property
    def out_dim(self) -> int:
        return len(self.psi_basis)

    # --- JSON document form -------------------------------------------------

    def to_json_dict(self) -> dict:
        """Document with literal coefficient matrices; see ``from_json_dict``."""
        return {
            "innovation": {"kind": self.innovation.kind, "k_trunc": self.innovation.k_trunc},
            "coeffs": [a.tolist() for a in self.coeffs],
            "psi_basis": {"family": "half_integer_sine", "count": self.out_dim},
            "grid": {"m": self.grid.m},
            "seed": self.seed,
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "LinearProcessSpec":
        """Rebuild from a document produced by ``to_json_dict`` or from the
        generative form carrying ``coeff_spec`` instead of ``coeffs``."""
        try:
            innovation = InnovationModel(**doc["innovation"])
            grid = Grid.uniform(int(doc["grid"]["m"]))
            seed = int(doc["seed"])
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"bad process document: {exc}") from exc
        if "coeffs" in doc:
            coeffs = [np.asarray(a, dtype=float) for a in doc["coeffs"]]
            if not coeffs:
                raise ConfigError("bad process document: empty coeffs")
            out_dim = coeffs[0].shape[0]
            psi = _sine_family(grid, out_dim)
            return cls(innovation, tuple(coeffs), psi, grid, seed)
        if "coeff_spec" in doc:
            cspec = CoefficientSpec(**doc["coeff_spec"])
            return make_process(innovation, cspec, grid, seed)
        raise ConfigError("process document needs 'coeffs' or 'coeff_spec'")

    def content_hash(self) -> str:
        """Stable hex digest of the full document (provenance for sidecars)."""
        import hashlib

        blob = json.dumps(self.to_json_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()


def _sine_family(grid: Grid, count: int) -> tuple:
    mat = sine_basis_matrix(grid, count)
    return tuple(GridFunction(grid, mat[:, i]) for i in range(count))


def make_process(
    innovation: InnovationModel,
    coeff_spec: CoefficientSpec,
    grid: Grid,
    seed: int,
) -> LinearProcessSpec:
    """Assemble a process: draw coefficients, attach the sine output basis."""
    coeffs = make_coefficients(coeff_spec, innovation.k_trunc)
    psi = _sine_family(grid, coeff_spec.out_dim)
    return LinearProcessSpec(
        innovation, tuple(coeffs), psi, grid, seed, coeff_spec=coeff_spec
    )


def reseed(spec: LinearProcessSpec, seed: int) -> LinearProcessSpec:
    """The same process with a different innovation seed."""
    return replace(spec, seed=seed)


def simulate_process(spec: LinearProcessSpec, t_len: int) -> FunctionalSeries:
    """Simulate a strictly stationary stretch of length ``t_len``.

    Draws i.i.d. standard-normal scores, scales them by the KL standard
    deviations, applies the MA filter with exactly q burn-in presamples,
    and evaluates on the grid.
    """
    if t_len < 1:
        raise ValueError("t_len must be >= 1")
    q = spec.q
    k_trunc = spec.innovation.k_trunc
    gen = substream(spec.seed, LANE_INNOVATION)
    scores = gen.standard_normal((t_len + q, k_trunc))
    eps = scores * np.sqrt(spec.innovation.eigenvalues())
    coeff_series = np.zeros((t_len, spec.out_dim))
    for s, a_s in enumerate(spec.coeffs):
        coeff_series += eps[q - s : q - s + t_len] @ a_s.T
    data = coeff_series @ psi_matrix(spec).T
    return FunctionalSeries(spec.grid, data)


def psi_matrix(spec: LinearProcessSpec) -> np.ndarray:
    """Output basis values as an M x out_dim matrix."""
    return spec._psi_matrix()


def true_autocov(spec: LinearProcessSpec, t: int) -> KernelOperator:
    """Exact lag-``t`` autocovariance kernel of the process.

    sum_s A_{s+t} C A_s^T in coefficients (C the diagonal truncated KL
    covariance), mapped onto the grid; zero for |t| > q, and the
    transpose relation holds exactly for negative lags.
    """
    lag = abs(t)
    if lag > spec.q:
        return KernelOperator.zero(spec.grid)
    lam = spec.innovation.eigenvalues()
    coeff_cov = sum(
        spec.coeffs[s + lag] @ (lam[:, None] * spec.coeffs[s].T)
        for s in range(spec.q - lag + 1)
    )
    psi = psi_matrix(spec)
    kernel = psi @ coeff_cov @ psi.T
    # transpose the finished kernel so R(-t) == R(t)^T holds bitwise
    return KernelOperator(spec.grid, kernel.T if t < 0 else kernel)


def true_sdo(spec: LinearProcessSpec, omega: float) -> KernelOperator:
    """Exact spectral density kernel of the process at ``omega``.

    Computed from the filter transfer function B(ω) = sum_s A_s e^{-iωs}
    as B(ω) C B(ω)† / 2π, which equals the lag sum
    (1/2π) sum_{|t| <= q} e^{-iωt} R_t and is Hermitian PSD by
    construction.
    """
    transfer = sum(
        a_s * np.exp(-1j * omega * s) for s, a_s in enumerate(spec.coeffs)
    )
    lam = spec.innovation.eigenvalues()
    coeff_kernel = (transfer * lam) @ transfer.conj().T / TWO_PI
    psi = psi_matrix(spec)
    return KernelOperator(spec.grid, psi @ coeff_kernel @ psi.T)
