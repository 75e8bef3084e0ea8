"""Grid-based representations of functions on [0,1] and kernels on [0,1]².

Functions are sampled on a uniform grid carrying trapezoid quadrature
weights; kernels are sampled on the product grid.  All inner products,
norms, and operator actions below are the quadrature analogues of their
L² definitions, so refining the grid converges to the continuum values.

Values are stored as complex throughout (real inputs are promoted):
frequency-domain objects are intrinsically complex and a single storage
type keeps the algebra uniform.  All types are immutable after
construction and all operations are pure, so everything here is safe to
share across concurrent workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError

_WEIGHT_SUM_TOL = 1e-12


def _frozen_array(values, dtype) -> np.ndarray:
    out = np.array(values, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [0,1] with trapezoid quadrature weights.

    Endpoint weights are 1/(2(M-1)) and interior weights 1/(M-1), so the
    weights sum to one and degree-1 polynomials are integrated exactly.
    """

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        points = _frozen_array(self.points, float)
        weights = _frozen_array(self.weights, float)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)
        if points.ndim != 1 or points.size < 2:
            raise DimensionError("grid needs at least 2 points")
        if weights.shape != points.shape:
            raise DimensionError("weights and points must have equal length")
        if not np.all(np.diff(points) > 0):
            raise ValueError("grid points must be strictly increasing")
        if not np.all(weights > 0):
            raise ValueError("quadrature weights must be positive")
        if abs(weights.sum() - 1.0) > _WEIGHT_SUM_TOL:
            raise ValueError("quadrature weights must sum to 1")

    @property
    def m(self) -> int:
        return self.points.size

    @classmethod
    def uniform(cls, m: int) -> "Grid":
        """The m-point uniform grid on [0,1] with trapezoid weights."""
        if m < 2:
            raise ValueError(f"need m >= 2 grid points, got {m}")
        points = np.linspace(0.0, 1.0, m)
        weights = np.full(m, 1.0 / (m - 1))
        weights[0] = weights[-1] = 0.5 / (m - 1)
        return cls(points, weights)

    def matches(self, other: "Grid") -> bool:
        return self.m == other.m and np.array_equal(self.points, other.points)


def _require_same_grid(a: Grid, b: Grid, what: str) -> None:
    if not a.matches(b):
        raise DimensionError(f"{what}: operands live on different grids")


@dataclass(frozen=True)
class GridFunction:
    """A complex-valued function on [0,1], sampled on a grid."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = _frozen_array(self.values, complex)
        object.__setattr__(self, "values", values)
        if values.shape != (self.grid.m,):
            raise DimensionError(
                f"need {self.grid.m} values, got shape {values.shape}"
            )

    def norm(self) -> float:
        """Quadrature L² norm."""
        return float(np.sqrt(inner_product(self, self).real))


@dataclass(frozen=True)
class FunctionalSeries:
    """A length-T sequence of real functions sharing one grid.

    Row ``t`` of ``data`` is the t-th curve sampled on ``grid``.
    """

    grid: Grid
    data: np.ndarray

    def __post_init__(self):
        data = _frozen_array(self.data, float)
        object.__setattr__(self, "data", data)
        if data.ndim != 2 or data.shape[1] != self.grid.m:
            raise DimensionError(
                f"series data must be T x {self.grid.m}, got {data.shape}"
            )
        if data.shape[0] < 1:
            raise ValueError("series length must be at least 1")

    @property
    def t_len(self) -> int:
        return self.data.shape[0]

    def curve(self, t: int) -> GridFunction:
        return GridFunction(self.grid, self.data[t])


@dataclass(frozen=True)
class KernelOperator:
    """A complex kernel k(τ,σ) on [0,1]², inducing an integral operator.

    Entry ``kernel[i, j]`` is k evaluated at (points[i], points[j]); the
    operator acts by right integration against the second argument.
    """

    grid: Grid
    kernel: np.ndarray

    def __post_init__(self):
        kernel = _frozen_array(self.kernel, complex)
        object.__setattr__(self, "kernel", kernel)
        m = self.grid.m
        if kernel.shape != (m, m):
            raise DimensionError(f"kernel must be {m} x {m}, got {kernel.shape}")
        if not np.all(np.isfinite(kernel)):
            raise ValueError("kernel entries must be finite")

    @classmethod
    def zero(cls, grid: Grid) -> "KernelOperator":
        return cls(grid, np.zeros((grid.m, grid.m), dtype=complex))


def inner_product(f: GridFunction, g: GridFunction) -> complex:
    """Quadrature inner product, conjugate-linear in the second slot.

    Returns sum_i f_i * conj(g_i) * w_i, the grid analogue of
    ∫ f(τ) conj(g(τ)) dτ.

    Raises
    ------
    DimensionError
        If ``f`` and ``g`` live on different grids.
    """
    _require_same_grid(f.grid, g.grid, "inner_product")
    return complex(np.sum(f.values * np.conj(g.values) * f.grid.weights))


def hs_norm(k: KernelOperator) -> float:
    """Hilbert–Schmidt norm: sqrt(sum_ij |k_ij|² w_i w_j)."""
    w = k.grid.weights
    return float(np.sqrt(np.sum((np.abs(k.kernel) ** 2) * np.outer(w, w))))


def apply_operator(k: KernelOperator, h: GridFunction) -> GridFunction:
    """Apply the integral operator induced by ``k`` to ``h``.

    Output value at point i is sum_j k_ij h_j w_j, the quadrature form of
    ∫ k(τ_i, σ) h(σ) dσ.
    """
    _require_same_grid(k.grid, h.grid, "apply_operator")
    out = k.kernel @ (h.values * k.grid.weights)
    return GridFunction(k.grid, out)


def tensor(f: GridFunction, g: GridFunction) -> KernelOperator:
    """Rank-1 kernel with entries f_i * conj(g_j)."""
    _require_same_grid(f.grid, g.grid, "tensor")
    return KernelOperator(f.grid, np.outer(f.values, np.conj(g.values)))


def is_hermitian(k: KernelOperator, tol: float = 1e-9) -> bool:
    """True when max |k_ij - conj(k_ji)| <= tol."""
    return bool(np.max(np.abs(k.kernel - k.kernel.conj().T)) <= tol)


def is_psd(k: KernelOperator, tol: float = 1e-9) -> bool:
    """True when the operator is positive semidefinite up to ``tol``.

    Tested on the symmetrically weighted matrix D^{1/2} K D^{1/2} with
    D = diag(weights): the quadrature weights enter the similarity
    transform because it is the induced operator, not the raw matrix,
    that must be PSD.
    """
    sqrt_w = np.sqrt(k.grid.weights)
    weighted = k.kernel * np.outer(sqrt_w, sqrt_w)
    # Hermitian part; for Hermitian input this is the matrix itself.
    sym = 0.5 * (weighted + weighted.conj().T)
    smallest = float(np.linalg.eigvalsh(sym)[0])
    return smallest >= -tol
