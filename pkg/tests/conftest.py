"""Shared builders for the test suite."""

import numpy as np
import pytest

from funspec import (
    CoefficientSpec,
    FunctionalSeries,
    Grid,
    GridFunction,
    InnovationModel,
    LinearProcessSpec,
    make_process,
)
from funspec.simulate import sine_basis_matrix


def random_series(t_len: int, m: int, seed: int) -> FunctionalSeries:
    rng = np.random.default_rng(seed)
    return FunctionalSeries(Grid.uniform(m), rng.standard_normal((t_len, m)))


def random_function(m: int, seed: int, complex_values: bool = False) -> GridFunction:
    rng = np.random.default_rng(seed)
    values = rng.standard_normal(m)
    if complex_values:
        values = values + 1j * rng.standard_normal(m)
    return GridFunction(Grid.uniform(m), values)


def sine_probe(grid: Grid, k: int) -> GridFunction:
    return GridFunction(grid, sine_basis_matrix(grid, k)[:, k - 1])


def small_process(
    q: int = 1,
    out_dim: int = 8,
    k_trunc: int = 32,
    alpha: float = 1.0,
    kind: str = "wiener_kl",
    m: int = 64,
    coeff_seed: int = 101,
    seed: int = 202,
) -> LinearProcessSpec:
    innovation = InnovationModel(kind, k_trunc)
    cspec = CoefficientSpec(q=q, out_dim=out_dim, alpha=alpha, seed=coeff_seed)
    return make_process(innovation, cspec, Grid.uniform(m), seed)


@pytest.fixture
def grid11() -> Grid:
    return Grid.uniform(11)
