"""Discrete Fourier transform of a functional series.

The transform of a length-T series at angular frequency ω is the curve

    (2πT)^{-1/2} * sum_{t=0}^{T-1} X_t * exp(-iωt),

evaluated pointwise on the grid.  ``fdft_at`` computes it at one
arbitrary frequency by direct summation; ``fdft_all`` computes the whole
canonical grid ω = 2πs/T, s = 0..T-1, with a fast transform.  Frequency
arguments are reduced modulo 2π before evaluation, so the transform is
exactly 2π-periodic.

No mean correction is applied: subtract ``mean_function`` beforehand if
a centered transform is wanted.  Centering silently would corrupt the
s = 0 row, which carries the mean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numcore import FunctionalSeries, Grid, GridFunction

TWO_PI = 2.0 * math.pi

_FOURIER_TOL = 1e-12
_ROW_SYMMETRY_TOL = 1e-10


def reduce_angle(omega: float) -> float:
    """Reduce an angle to [-π, π] (IEEE remainder, exact)."""
    return math.remainder(omega, TWO_PI)


@dataclass(frozen=True)
class Frequency:
    """An angular frequency, optionally tagged as the s-th Fourier frequency.

    When ``fourier_index`` is set, ``t_len`` must be set too and
    ``omega`` must equal 2π·s/T to within 1e-12.
    """

    omega: float
    fourier_index: int | None = None
    t_len: int | None = None

    def __post_init__(self):
        if self.fourier_index is not None:
            if self.t_len is None:
                raise ValueError("fourier_index requires t_len")
            target = TWO_PI * self.fourier_index / self.t_len
            if abs(self.omega - target) >= _FOURIER_TOL:
                raise ValueError(
                    f"omega={self.omega!r} is not 2*pi*{self.fourier_index}/{self.t_len}"
                )

    @classmethod
    def fourier(cls, s: int, t_len: int) -> "Frequency":
        """The Fourier frequency 2π·s/T."""
        return cls(TWO_PI * s / t_len, fourier_index=s, t_len=t_len)


def _omega_of(freq) -> float:
    return freq.omega if isinstance(freq, Frequency) else float(freq)


@dataclass(frozen=True)
class FdftSet:
    """Transform values on the full Fourier grid: row s is ω = 2πs/T.

    For a real input series the rows satisfy the conjugate symmetry
    row[T-s] == conj(row[s]); this is validated at construction.  All T
    rows are kept (T x M complex): the smoothing estimator consumes every
    one, and the footprint is acceptable at workstation scale.
    """

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if values.ndim != 2 or values.shape[1] != self.grid.m:
            raise ValueError(f"values must be T x {self.grid.m}")
        mirrored = np.conj(values[::-1])          # row T-s for s = 1..T-1
        sym_err = np.max(np.abs(values[1:] - mirrored[:-1])) if len(values) > 1 else 0.0
        if sym_err > _ROW_SYMMETRY_TOL:
            raise ValueError(
                f"rows break Hermitian symmetry by {sym_err:.2e}; input series not real?"
            )

    @property
    def t_len(self) -> int:
        return self.values.shape[0]

    def row(self, s: int) -> GridFunction:
        """The transform at ω = 2πs/T as a GridFunction."""
        return GridFunction(self.grid, self.values[s % self.t_len])


def fdft_at(x: FunctionalSeries, omega) -> GridFunction:
    """Transform of ``x`` at one frequency (Frequency or float), O(T·M).

    Satisfies fdft_at(x, -ω) == conj(fdft_at(x, ω)) for real series and
    is exactly 2π-periodic in ω.
    """
    om = reduce_angle(_omega_of(omega))
    t = np.arange(x.t_len)
    phase = np.exp(-1j * om * t)
    values = (phase @ x.data) / math.sqrt(TWO_PI * x.t_len)
    return GridFunction(x.grid, values)


def fdft_all(x: FunctionalSeries) -> FdftSet:
    """Transform on the whole Fourier grid via FFT, O(M·T·log T).

    Row s equals ``fdft_at(x, 2πs/T)`` up to roundoff.
    """
    values = np.fft.fft(x.data, axis=0) / math.sqrt(TWO_PI * x.t_len)
    return FdftSet(x.grid, values)


def mean_function(x: FunctionalSeries) -> GridFunction:
    """Pointwise sample mean (1/T) sum_t X_t, a real curve.

    Equals sqrt(2π/T) times the transform at ω = 0.
    """
    return GridFunction(x.grid, x.data.mean(axis=0))
