import math

import numpy as np
import pytest

from conftest import small_process
from funspec import (
    CoefficientSpec,
    EstimatorConfig,
    Frequency,
    Grid,
    InnovationModel,
    KernelOperator,
    LinearProcessSpec,
    SpectralEstimate,
    WeightFunction,
    autocov_from_sdo,
    empirical_autocov,
    hs_norm,
    is_hermitian,
    is_psd,
    make_coefficients,
    make_process,
    reseed,
    simulate_process,
    true_autocov,
    true_sdo,
    unbiasedness_check,
)
from funspec.errors import ConfigError
from funspec.simulate import sine_basis_matrix

TWO_PI = 2.0 * math.pi


class TestMakeCoefficients:
    def test_alpha_zero_rows_are_standard_normal(self):
        spec = CoefficientSpec(q=0, out_dim=4, alpha=0.0, seed=7)
        (a0,) = make_coefficients(spec, 1000)
        row_var = a0[0].var()
        assert 0.85 <= row_var <= 1.15

    def test_alpha_two_row_decay(self):
        spec = CoefficientSpec(q=0, out_dim=10, alpha=2.0, seed=8)
        (a0,) = make_coefficients(spec, 1000)
        ratio = a0[9].var() / a0[0].var()
        # analytic ratio 10^-4; chi-square spread allows a factor of 3
        assert 1e-4 / 3 <= ratio <= 1e-4 * 3

    def test_deterministic_given_seed(self):
        spec = CoefficientSpec(q=3, out_dim=5, alpha=1.0, seed=9)
        first = make_coefficients(spec, 64)
        second = make_coefficients(spec, 64)
        assert all(np.array_equal(a, b) for a, b in zip(first, second))


class TestSimulateProcess:
    def test_identity_embedding_recovers_brownian_covariance(self):
        # q = 0 with A_0 = I maps KL innovations straight through, so the
        # lag-0 kernel is the truncated min(tau, sigma)
        k_trunc = 200
        grid = Grid.uniform(401)
        innovation = InnovationModel("wiener_kl", k_trunc)
        basis = sine_basis_matrix(grid, k_trunc)
        from funspec import GridFunction

        psi = tuple(GridFunction(grid, basis[:, i]) for i in range(k_trunc))
        spec = LinearProcessSpec(
            innovation, (np.eye(k_trunc),), psi, grid, seed=505
        )
        x = simulate_process(spec, 4096)
        est = empirical_autocov(x, 0)
        target = np.minimum.outer(grid.points, grid.points)
        diff = KernelOperator(grid, est.kernel - target)
        ref = KernelOperator(grid, target.astype(complex))
        assert hs_norm(diff) < 0.15 * hs_norm(ref)

    def test_ma_lag_cutoff(self):
        spec = small_process(q=1, out_dim=8, k_trunc=32, m=64, seed=606)
        x = simulate_process(spec, 4096)
        far = hs_norm(empirical_autocov(x, spec.q + 3))
        near = hs_norm(empirical_autocov(x, 0))
        assert far < 0.20 * near

    def test_same_seed_identical(self):
        spec = small_process(seed=707)
        a = simulate_process(spec, 64)
        b = simulate_process(spec, 64)
        assert np.array_equal(a.data, b.data)

    def test_prefix_stability(self):
        # a longer run from the same seed extends the shorter one
        spec = small_process(seed=808)
        short = simulate_process(spec, 40)
        long = simulate_process(spec, 56)
        assert np.array_equal(short.data, long.data[:40])

    def test_shifted_window_is_stationary(self):
        # lag-0 statistics of the window [k, T+k) from a longer run match
        # the [0, T) window within Monte Carlo tolerance
        spec = small_process(q=1, out_dim=8, k_trunc=32, m=64, seed=909)
        t_len, k = 2048, 128
        base = simulate_process(spec, t_len)
        longer = simulate_process(spec, t_len + k)
        shifted = type(base)(base.grid, longer.data[k:])
        r_base = empirical_autocov(base, 0)
        r_shift = empirical_autocov(shifted, 0)
        diff = KernelOperator(base.grid, r_base.kernel - r_shift.kernel)
        assert hs_norm(diff) < 0.15 * hs_norm(r_base)


class TestTrueSdo:
    def test_q0_flat_spectrum(self):
        spec = small_process(q=0, out_dim=6, k_trunc=24, m=48)
        lam = spec.innovation.eigenvalues()
        a0 = spec.coeffs[0]
        psi = sine_basis_matrix(spec.grid, spec.out_dim)
        expected = psi @ ((a0 * lam) @ a0.T) @ psi.T / TWO_PI
        for om in (0.0, 1.0, 2.8):
            assert np.max(np.abs(true_sdo(spec, om).kernel - expected)) < 1e-12

    def test_hermitian_psd_at_random_frequencies(self):
        spec = small_process(q=2, out_dim=8, k_trunc=24, m=48)
        rng = np.random.default_rng(42)
        for om in rng.uniform(-math.pi, math.pi, size=50):
            op = true_sdo(spec, float(om))
            assert is_hermitian(op, 1e-8)
            assert is_psd(op, 1e-8)

    def test_mean_periodogram_approaches_truth(self):
        # Monte Carlo unbiasedness of the periodogram at a Fourier frequency
        spec = small_process(q=1, out_dim=8, k_trunc=32, m=48, seed=111)
        bias = unbiasedness_check(spec, t_len=512, s_index=64, reps=500, master_seed=3)
        assert bias < 0.10


class TestTrueAutocov:
    def test_zero_beyond_ma_order(self):
        spec = small_process(q=2)
        assert np.all(true_autocov(spec, 3).kernel == 0)
        assert np.all(true_autocov(spec, -5).kernel == 0)

    def test_lag_zero_psd(self):
        spec = small_process(q=2)
        assert is_psd(true_autocov(spec, 0), 1e-10)

    def test_negative_lag_transpose(self):
        spec = small_process(q=2)
        r1 = true_autocov(spec, 1).kernel
        rm1 = true_autocov(spec, -1).kernel
        assert np.array_equal(rm1, r1.T)

    def test_inversion_consistency_on_frequency_circle(self):
        # integrating true_sdo against e^{it·} over 128 frequencies
        # recovers true_autocov to quadrature accuracy
        spec = small_process(q=2, out_dim=6, k_trunc=16, m=32)
        n = 128
        freqs = tuple(Frequency(TWO_PI * k / n) for k in range(n))
        cfg = EstimatorConfig(0.5, WeightFunction.epanechnikov(), freqs)
        ops = tuple(true_sdo(spec, f.omega) for f in freqs)
        est = SpectralEstimate(cfg, spec.grid, n, ops)
        for lag in (0, 1, 2):
            recovered = autocov_from_sdo(est, lag)
            target = true_autocov(spec, lag)
            diff = KernelOperator(spec.grid, recovered.kernel - target.kernel)
            assert hs_norm(diff) < 1e-6


class TestInnovationModel:
    def test_truncated_wiener_covariance_near_brownian(self):
        # HS error of the K = 200 truncation against min(tau, sigma) < 1%
        grid = Grid.uniform(401)
        model = InnovationModel("wiener_kl", 200)
        truncated = model.covariance_kernel(grid)
        target = KernelOperator(grid, np.minimum.outer(grid.points, grid.points))
        diff = KernelOperator(grid, truncated.kernel - target.kernel)
        assert hs_norm(diff) < 0.01 * hs_norm(target)

    def test_white_noise_unit_eigenvalues(self):
        model = InnovationModel("white_noise_kl", 16)
        assert np.all(model.eigenvalues() == 1.0)

    def test_unknown_kind_rejected(self):
        with pytest.raises(ConfigError):
            InnovationModel("brownian_bridge", 10)


class TestProcessSpec:
    def test_json_round_trip(self):
        spec = small_process(q=1, out_dim=4, k_trunc=8, m=16)
        doc = spec.to_json_dict()
        back = LinearProcessSpec.from_json_dict(doc)
        assert back.innovation == spec.innovation
        assert back.seed == spec.seed
        assert all(np.array_equal(a, b) for a, b in zip(back.coeffs, spec.coeffs))
        x1 = simulate_process(spec, 16)
        x2 = simulate_process(back, 16)
        assert np.array_equal(x1.data, x2.data)

    def test_generative_document_form(self):
        doc = {
            "innovation": {"kind": "wiener_kl", "k_trunc": 8},
            "coeff_spec": {"q": 1, "out_dim": 4, "alpha": 1.0, "seed": 3},
            "grid": {"m": 16},
            "seed": 5,
        }
        spec = LinearProcessSpec.from_json_dict(doc)
        direct = make_process(
            InnovationModel("wiener_kl", 8),
            CoefficientSpec(q=1, out_dim=4, alpha=1.0, seed=3),
            Grid.uniform(16),
            5,
        )
        assert all(np.array_equal(a, b) for a, b in zip(spec.coeffs, direct.coeffs))

    def test_reseed_changes_draws_not_structure(self):
        spec = small_process(seed=1)
        other = reseed(spec, 2)
        assert all(np.array_equal(a, b) for a, b in zip(spec.coeffs, other.coeffs))
        assert not np.array_equal(
            simulate_process(spec, 32).data, simulate_process(other, 32).data
        )

    def test_coarse_grid_breaks_orthonormality(self):
        # 5 grid points cannot carry 8 orthonormal sine modes
        with pytest.raises(ConfigError):
            small_process(out_dim=8, m=5)

    def test_content_hash_stable(self):
        spec = small_process(q=1, out_dim=4, k_trunc=8, m=16)
        assert spec.content_hash() == spec.content_hash()
        assert spec.content_hash() != reseed(spec, 999).content_hash()
