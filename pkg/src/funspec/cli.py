"""Command-line interface.

Each subcommand reads a JSON config (schema-validated, unknown keys
rejected), runs the corresponding library routine, and writes delimited
numeric outputs plus a JSON manifest into the output directory.  Report
paths also render a PNG figure unless the config disables it.

All randomness is derived from the single ``master_seed`` config key
(overridable with ``--seed``): coefficient draws use lane 0, innovation
streams lane 1, observation noise lane 2, with replication indices
appended.  Outputs are byte-identical for any ``--threads`` value.

Exit codes: 0 success, 2 config/validation error, 3 data/parse error,
4 numerical failure (non-finite values).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import jsonschema
import numpy as np

from . import __version__
from .bench import (
    default_config,
    gamma_frequencies,
    gaussianity_diag,
    imse_experiment,
    mean_clt_diag,
)
from .errors import (
    ConfigError,
    DataFormatError,
    DimensionError,
    NumericsError,
    ResolutionError,
)
from .fdft import TWO_PI, Frequency, fdft_all
from .numcore import Grid, GridFunction, KernelOperator, is_hermitian, is_psd
from .rng import LANE_COEFF, LANE_INNOVATION, LANE_NOISE, derive_seed
from .sampling import SamplingScheme, default_noise_sd, observe, robustness_gap
from .serialize import (
    read_series_csv,
    read_complex_matrix,
    read_json,
    write_complex_matrix,
    write_json,
    write_matrix_csv,
    write_series_csv,
)
from .simulate import (
    CoefficientSpec,
    InnovationModel,
    LinearProcessSpec,
    make_process,
    sine_basis_matrix,
    simulate_process,
)
from .spectral import (
    EstimatorConfig,
    SpectralEstimate,
    WeightFunction,
    autocov_from_sdo,
    default_bandwidth,
    estimate_sdo,
    long_run_cov,
)

VERSION_STRING = f"funspec {__version__}"

# --------------------------------------------------------------------------
# config schemas

_INNOVATION_SCHEMA = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["wiener_kl", "white_noise_kl"]},
        "k_trunc": {"type": "integer", "minimum": 1},
    },
    "required": ["kind", "k_trunc"],
    "additionalProperties": False,
}

_PROCESS_SCHEMA = {
    "type": "object",
    "properties": {
        "innovation": _INNOVATION_SCHEMA,
        "coeff_spec": {
            "type": "object",
            "properties": {
                "q": {"type": "integer", "minimum": 0},
                "out_dim": {"type": "integer", "minimum": 1},
                "alpha": {"type": "number", "minimum": 0},
            },
            "required": ["q", "out_dim", "alpha"],
            "additionalProperties": False,
        },
        "coeffs": {"type": "array", "minItems": 1},
        "grid_m": {"type": "integer", "minimum": 2},
    },
    "required": ["innovation", "grid_m"],
    "additionalProperties": False,
}

_FREQUENCIES_SCHEMA = {
    "oneOf": [
        {
            "type": "object",
            "properties": {
                "kind": {"const": "uniform_circle"},
                "count": {"type": "integer", "minimum": 1},
            },
            "required": ["kind", "count"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "explicit"},
                "omegas": {
                    "type": "array",
                    "items": {"type": "number"},
                    "minItems": 1,
                },
            },
            "required": ["kind", "omegas"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"kind": {"const": "gamma"}},
            "required": ["kind"],
            "additionalProperties": False,
        },
    ]
}

_WEIGHT_SCHEMA = {"enum": ["epanechnikov", "bartlett"]}

_SIGMA_RULE_SCHEMA = {
    "oneOf": [
        {
            "type": "object",
            "properties": {"kind": {"const": "inv_sqrt_m"}},
            "required": ["kind"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "fixed"},
                "sigma": {"type": "number", "minimum": 0},
            },
            "required": ["kind", "sigma"],
            "additionalProperties": False,
        },
    ]
}

SCHEMAS = {
    "simulate": {
        "type": "object",
        "properties": {
            "master_seed": {"type": "integer", "minimum": 0},
            "t_len": {"type": "integer", "minimum": 1},
            "process": _PROCESS_SCHEMA,
            "prefix": {"type": "string"},
        },
        "required": ["master_seed", "t_len", "process"],
        "additionalProperties": False,
    },
    "observe": {
        "type": "object",
        "properties": {
            "master_seed": {"type": "integer", "minimum": 0},
            "input": {"type": "string"},
            "m_obs": {"type": "integer", "minimum": 2},
            "sigma": {"type": "number", "minimum": 0},
            "sigma_rule": _SIGMA_RULE_SCHEMA,
            "prefix": {"type": "string"},
        },
        "required": ["master_seed", "input", "m_obs"],
        "additionalProperties": False,
    },
    "fdft": {
        "type": "object",
        "properties": {
            "input": {"type": "string"},
            "prefix": {"type": "string"},
        },
        "required": ["input"],
        "additionalProperties": False,
    },
    "estimate": {
        "type": "object",
        "properties": {
            "input": {"type": "string"},
            "bandwidth": {"type": "number", "exclusiveMinimum": 0},
            "weight": _WEIGHT_SCHEMA,
            "frequencies": _FREQUENCIES_SCHEMA,
            "prefix": {"type": "string"},
            "figures": {"type": "boolean"},
        },
        "required": ["input", "frequencies"],
        "additionalProperties": False,
    },
    "invert": {
        "type": "object",
        "properties": {
            "manifest": {"type": "string"},
            "lags": {
                "type": "array",
                "items": {"type": "integer"},
                "minItems": 1,
            },
            "prefix": {"type": "string"},
        },
        "required": ["manifest", "lags"],
        "additionalProperties": False,
    },
    "longrun": {
        "type": "object",
        "properties": {
            "input": {"type": "string"},
            "bandwidth": {"type": "number", "exclusiveMinimum": 0},
            "weight": _WEIGHT_SCHEMA,
            "prefix": {"type": "string"},
        },
        "required": ["input"],
        "additionalProperties": False,
    },
    "bench imse": {
        "type": "object",
        "properties": {
            "master_seed": {"type": "integer", "minimum": 0},
            "process": _PROCESS_SCHEMA,
            "t_list": {
                "type": "array",
                "items": {"type": "integer", "minimum": 2},
                "minItems": 1,
            },
            "reps": {"type": "integer", "minimum": 2},
            "bandwidth_exponent": {"type": "number", "exclusiveMaximum": 0},
            "weight": _WEIGHT_SCHEMA,
            "redraw_operators": {"type": "boolean"},
            "prefix": {"type": "string"},
            "figures": {"type": "boolean"},
        },
        "required": ["master_seed", "process", "t_list", "reps"],
        "additionalProperties": False,
    },
    "bench gauss": {
        "type": "object",
        "properties": {
            "master_seed": {"type": "integer", "minimum": 0},
            "process": _PROCESS_SCHEMA,
            "t_len": {"type": "integer", "minimum": 2},
            "reps": {"type": "integer", "minimum": 8},
            "fourier_index": {"type": "integer", "minimum": 1},
            "cross_fourier_index": {"type": "integer", "minimum": 1},
            "probe_indices": {
                "type": "array",
                "items": {"type": "integer", "minimum": 1},
                "minItems": 1,
            },
            "prefix": {"type": "string"},
            "figures": {"type": "boolean"},
        },
        "required": ["master_seed", "process", "t_len", "reps", "fourier_index"],
        "additionalProperties": False,
    },
    "bench clt": {
        "type": "object",
        "properties": {
            "master_seed": {"type": "integer", "minimum": 0},
            "process": _PROCESS_SCHEMA,
            "t_len": {"type": "integer", "minimum": 2},
            "reps": {"type": "integer", "minimum": 8},
            "probe_indices": {
                "type": "array",
                "items": {"type": "integer", "minimum": 1},
                "minItems": 1,
            },
            "prefix": {"type": "string"},
            "figures": {"type": "boolean"},
        },
        "required": ["master_seed", "process", "t_len", "reps"],
        "additionalProperties": False,
    },
    "robustness": {
        "type": "object",
        "properties": {
            "master_seed": {"type": "integer", "minimum": 0},
            "process": _PROCESS_SCHEMA,
            "t_len": {"type": "integer", "minimum": 2},
            "reps": {"type": "integer", "minimum": 1},
            "m_obs_list": {
                "type": "array",
                "items": {"type": "integer", "minimum": 2},
                "minItems": 1,
            },
            "sigma_rule": _SIGMA_RULE_SCHEMA,
            "bandwidth": {"type": "number", "exclusiveMinimum": 0},
            "weight": _WEIGHT_SCHEMA,
            "prefix": {"type": "string"},
            "figures": {"type": "boolean"},
        },
        "required": ["master_seed", "process", "t_len", "reps", "m_obs_list"],
        "additionalProperties": False,
    },
}


def _validate(doc: dict, command: str) -> None:
    validator = jsonschema.Draft202012Validator(SCHEMAS[command])
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        where = "/".join(str(p) for p in first.absolute_path) or "(top level)"
        raise ConfigError(f"config field {where}: {first.message}")


# --------------------------------------------------------------------------
# shared builders

def _build_process(block: dict, master_seed: int) -> LinearProcessSpec:
    innovation = InnovationModel(**block["innovation"])
    grid = Grid.uniform(block["grid_m"])
    seed = derive_seed(master_seed, LANE_INNOVATION)
    if "coeffs" in block and "coeff_spec" in block:
        raise ConfigError("process block must give either coeffs or coeff_spec, not both")
    if "coeffs" in block:
        doc = {
            "innovation": block["innovation"],
            "coeffs": block["coeffs"],
            "grid": {"m": block["grid_m"]},
            "seed": seed,
        }
        return LinearProcessSpec.from_json_dict(doc)
    if "coeff_spec" not in block:
        raise ConfigError("process block needs coeffs or coeff_spec")
    cspec = CoefficientSpec(seed=derive_seed(master_seed, LANE_COEFF), **block["coeff_spec"])
    return make_process(innovation, cspec, grid, seed)


def _build_weight(cfg: dict) -> WeightFunction:
    return WeightFunction.by_name(cfg.get("weight", "epanechnikov"))


def _build_frequencies(block: dict) -> tuple:
    if block["kind"] == "uniform_circle":
        n = block["count"]
        return tuple(Frequency(TWO_PI * k / n) for k in range(n))
    if block["kind"] == "explicit":
        return tuple(Frequency(float(w)) for w in block["omegas"])
    return gamma_frequencies()


def _sigma_for(rule: dict | None, explicit: float | None, m_obs: int) -> float:
    if explicit is not None:
        return float(explicit)
    if rule is None or rule["kind"] == "inv_sqrt_m":
        return default_noise_sd(m_obs)
    return float(rule["sigma"])


def _probes(grid: Grid, indices) -> list[GridFunction]:
    count = max(indices)
    basis = sine_basis_matrix(grid, count)
    return [GridFunction(grid, basis[:, i - 1]) for i in indices]


def _ensure_finite(*arrays) -> None:
    for arr in arrays:
        if not np.all(np.isfinite(np.asarray(arr))):
            raise NumericsError("non-finite values in output")


def _read_series(path):
    x = read_series_csv(path)
    if not np.all(np.isfinite(x.data)):
        raise NumericsError(f"{path}: series contains non-finite values")
    return x


def _operator_checks(est: SpectralEstimate) -> list[dict]:
    checks = []
    for i, (freq, op) in enumerate(zip(est.config.frequencies, est.operators)):
        checks.append(
            {
                "index": i,
                "omega": freq.omega,
                "hermitian": bool(is_hermitian(op, 1e-8)),
                "psd": bool(is_psd(op, 1e-8)),
            }
        )
    return checks


# --------------------------------------------------------------------------
# commands

def cmd_simulate(cfg: dict, out: Path, threads: int) -> None:
    spec = _build_process(cfg["process"], cfg["master_seed"])
    x = simulate_process(spec, cfg["t_len"])
    _ensure_finite(x.data)
    prefix = cfg.get("prefix", "series")
    write_series_csv(out / f"{prefix}.csv", x)
    write_json(
        out / f"{prefix}.json",
        {
            "grid": {"m": x.grid.m},
            "t_len": x.t_len,
            "master_seed": cfg["master_seed"],
            "spec_sha256": spec.content_hash(),
            "version": VERSION_STRING,
        },
    )


def cmd_observe(cfg: dict, out: Path, threads: int) -> None:
    x = _read_series(cfg["input"])
    sigma = _sigma_for(cfg.get("sigma_rule"), cfg.get("sigma"), cfg["m_obs"])
    scheme = SamplingScheme(
        m_obs=cfg["m_obs"],
        sigma=sigma,
        seed=derive_seed(cfg["master_seed"], LANE_NOISE),
    )
    y = observe(x, scheme)
    _ensure_finite(y.data)
    prefix = cfg.get("prefix", "observed")
    write_series_csv(out / f"{prefix}.csv", y)
    write_json(
        out / f"{prefix}.json",
        {
            "grid": {"m": y.grid.m},
            "t_len": y.t_len,
            "m_obs": scheme.m_obs,
            "sigma": scheme.sigma,
            "master_seed": cfg["master_seed"],
            "version": VERSION_STRING,
        },
    )


def cmd_fdft(cfg: dict, out: Path, threads: int) -> None:
    x = _read_series(cfg["input"])
    transform = fdft_all(x)
    _ensure_finite(transform.values)
    prefix = cfg.get("prefix", "fdft")
    write_complex_matrix(out / prefix, transform.values)
    w = x.grid.weights
    lhs = float(np.sum((np.abs(transform.values) ** 2) @ w))
    rhs = float(np.sum((x.data**2) @ w) / TWO_PI)
    write_json(
        out / f"{prefix}.json",
        {
            "t_len": x.t_len,
            "grid": {"m": x.grid.m},
            "parseval": {"transform_energy": lhs, "series_energy_over_2pi": rhs},
            "version": VERSION_STRING,
        },
    )


def _estimator_config(cfg: dict, t_len: int, frequencies) -> EstimatorConfig:
    bandwidth = cfg.get("bandwidth")
    if bandwidth is None:
        bandwidth = default_bandwidth(t_len)
    return EstimatorConfig(
        bandwidth=float(bandwidth),
        weight=_build_weight(cfg),
        frequencies=frequencies,
    )


def cmd_estimate(cfg: dict, out: Path, threads: int) -> None:
    x = _read_series(cfg["input"])
    est_cfg = _estimator_config(cfg, x.t_len, _build_frequencies(cfg["frequencies"]))
    est = estimate_sdo(x, est_cfg)
    prefix = cfg.get("prefix", "sdo")
    files = []
    for i, op in enumerate(est.operators):
        _ensure_finite(op.kernel)
        re_path, im_path = write_complex_matrix(out / f"{prefix}_f{i:03d}", op.kernel)
        files.append(
            {"index": i, "real": Path(re_path).name, "imag": Path(im_path).name}
        )
    write_json(
        out / f"{prefix}_manifest.json",
        {
            "t_len": x.t_len,
            "grid": {"m": x.grid.m},
            "bandwidth": est_cfg.bandwidth,
            "weight": est_cfg.weight.kind,
            "omegas": [f.omega for f in est_cfg.frequencies],
            "files": files,
            "checks": _operator_checks(est),
            "version": VERSION_STRING,
        },
    )
    if cfg.get("figures", False):
        from . import plots

        plots.save_figure(plots.amplitude_figure(est), out / f"{prefix}_amplitude.png")


def cmd_invert(cfg: dict, out: Path, threads: int) -> None:
    manifest = read_json(cfg["manifest"])
    try:
        grid = Grid.uniform(int(manifest["grid"]["m"]))
        t_len = int(manifest["t_len"])
        frequencies = tuple(Frequency(float(w)) for w in manifest["omegas"])
        weight = WeightFunction.by_name(manifest["weight"])
        bandwidth = float(manifest["bandwidth"])
        files = manifest["files"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DataFormatError(f"{cfg['manifest']}: bad estimate manifest: {exc}") from exc
    base = Path(cfg["manifest"]).parent
    ops = []
    for entry, freq in zip(files, frequencies):
        stem = entry["real"]
        if not stem.endswith("_re.csv"):
            raise DataFormatError(f"unexpected kernel file name {stem!r}")
        kernel = read_complex_matrix(base / stem[: -len("_re.csv")])
        ops.append(KernelOperator(grid, kernel))
    est_cfg = EstimatorConfig(bandwidth=bandwidth, weight=weight, frequencies=frequencies)
    est = SpectralEstimate(est_cfg, grid, t_len, tuple(ops))
    prefix = cfg.get("prefix", "autocov")
    lag_info = []
    for lag in cfg["lags"]:
        op = autocov_from_sdo(est, lag)
        _ensure_finite(op.kernel)
        write_complex_matrix(out / f"{prefix}_lag{lag}", op.kernel)
        lag_info.append(
            {"lag": lag, "max_abs_imag": float(np.max(np.abs(op.kernel.imag)))}
        )
    write_json(
        out / f"{prefix}.json",
        {"grid": {"m": grid.m}, "lags": lag_info, "version": VERSION_STRING},
    )


def cmd_longrun(cfg: dict, out: Path, threads: int) -> None:
    x = _read_series(cfg["input"])
    est_cfg = _estimator_config(cfg, x.t_len, (Frequency(0.0),))
    lrc = long_run_cov(x, est_cfg)
    _ensure_finite(lrc.kernel)
    prefix = cfg.get("prefix", "longrun")
    write_matrix_csv(out / f"{prefix}.csv", lrc.kernel.real)
    write_json(
        out / f"{prefix}.json",
        {
            "t_len": x.t_len,
            "grid": {"m": x.grid.m},
            "bandwidth": est_cfg.bandwidth,
            "weight": est_cfg.weight.kind,
            "max_abs_imag": float(np.max(np.abs(lrc.kernel.imag))),
            "hermitian": bool(is_hermitian(lrc, 1e-8)),
            "psd": bool(is_psd(lrc, 1e-8)),
            "version": VERSION_STRING,
        },
    )


def cmd_bench_imse(cfg: dict, out: Path, threads: int) -> None:
    master = cfg["master_seed"]
    spec = _build_process(cfg["process"], master)
    weight = _build_weight(cfg)
    exponent = cfg.get("bandwidth_exponent", -0.2)

    def rule(t_len: int) -> EstimatorConfig:
        return EstimatorConfig(
            bandwidth=float(t_len) ** exponent,
            weight=weight,
            frequencies=gamma_frequencies(),
        )

    report = imse_experiment(
        spec,
        cfg["t_list"],
        cfg["reps"],
        cfg_rule=rule,
        master_seed=master,
        redraw_operators=cfg.get("redraw_operators", False),
        threads=threads,
    )
    prefix = cfg.get("prefix", "imse")
    doc = report.to_json_dict()
    doc["config"]["bandwidth_exponent"] = exponent
    doc["config"]["weight"] = weight.kind
    doc["config"]["config_snapshot"] = cfg
    doc["version"] = VERSION_STRING
    doc["master_seed"] = master
    write_json(out / f"{prefix}.json", doc)
    rows = [
        [float(t), float(r), value]
        for t in report.t_list
        for r, value in enumerate(report.ise_values[t])
    ]
    write_matrix_csv(out / f"{prefix}.csv", np.array(rows))
    if cfg.get("figures", True):
        from . import plots

        plots.save_figure(plots.imse_figure(report), out / f"{prefix}.png")


def cmd_bench_gauss(cfg: dict, out: Path, threads: int) -> None:
    master = cfg["master_seed"]
    spec = _build_process(cfg["process"], master)
    t_len = cfg["t_len"]
    omega = Frequency.fourier(cfg["fourier_index"], t_len)
    probes = _probes(spec.grid, cfg.get("probe_indices", [1]))
    diag = gaussianity_diag(
        spec,
        t_len,
        omega,
        probes,
        cfg["reps"],
        master_seed=master,
        cross_index=cfg.get("cross_fourier_index"),
        threads=threads,
    )
    prefix = cfg.get("prefix", "gauss")
    write_json(
        out / f"{prefix}.json",
        {
            "omega": diag.omega,
            "cross_omega": diag.cross_omega,
            "cross_corr": diag.cross_corr,
            "probes": [vars(p) for p in diag.probes],
            "reps": cfg["reps"],
            "t_len": t_len,
            "master_seed": master,
            "version": VERSION_STRING,
        },
    )
    if cfg.get("figures", True):
        from . import plots

        plots.save_figure(plots.gaussianity_figure(diag), out / f"{prefix}.png")


def cmd_bench_clt(cfg: dict, out: Path, threads: int) -> None:
    master = cfg["master_seed"]
    spec = _build_process(cfg["process"], master)
    probes = _probes(spec.grid, cfg.get("probe_indices", [1]))
    diag = mean_clt_diag(
        spec, cfg["t_len"], probes, cfg["reps"], master_seed=master, threads=threads
    )
    prefix = cfg.get("prefix", "clt")
    write_json(
        out / f"{prefix}.json",
        {
            "empirical_var": list(diag.empirical_var),
            "reference_var": list(diag.reference_var),
            "ratios": list(diag.ratios),
            "reps": cfg["reps"],
            "t_len": cfg["t_len"],
            "master_seed": master,
            "version": VERSION_STRING,
        },
    )
    if cfg.get("figures", True):
        from . import plots

        plots.save_figure(plots.clt_figure(diag), out / f"{prefix}.png")


def cmd_robustness(cfg: dict, out: Path, threads: int) -> None:
    master = cfg["master_seed"]
    spec = _build_process(cfg["process"], master)
    t_len = cfg["t_len"]
    est_cfg = _estimator_config(cfg, t_len, gamma_frequencies())
    rows = []
    gaps = []
    sigmas = []
    for m_obs in cfg["m_obs_list"]:
        sigma = _sigma_for(cfg.get("sigma_rule"), None, m_obs)
        scheme = SamplingScheme(
            m_obs=m_obs, sigma=sigma, seed=derive_seed(master, LANE_NOISE, m_obs)
        )
        gap = robustness_gap(spec, t_len, scheme, est_cfg, cfg["reps"], threads=threads)
        rows.append([float(m_obs), sigma, gap])
        gaps.append(gap)
        sigmas.append(sigma)
    prefix = cfg.get("prefix", "robustness")
    write_json(
        out / f"{prefix}.json",
        {
            "m_obs_list": list(cfg["m_obs_list"]),
            "sigmas": sigmas,
            "gaps": gaps,
            "t_len": t_len,
            "reps": cfg["reps"],
            "bandwidth": est_cfg.bandwidth,
            "weight": est_cfg.weight.kind,
            "master_seed": master,
            "version": VERSION_STRING,
        },
    )
    write_matrix_csv(out / f"{prefix}.csv", np.array(rows))
    if cfg.get("figures", True):
        from . import plots

        plots.save_figure(
            plots.robustness_figure(cfg["m_obs_list"], gaps, sigmas),
            out / f"{prefix}.png",
        )


# --------------------------------------------------------------------------
# entry point

_HANDLERS = {
    "simulate": cmd_simulate,
    "observe": cmd_observe,
    "fdft": cmd_fdft,
    "estimate": cmd_estimate,
    "invert": cmd_invert,
    "longrun": cmd_longrun,
    "bench imse": cmd_bench_imse,
    "bench gauss": cmd_bench_gauss,
    "bench clt": cmd_bench_clt,
    "robustness": cmd_robustness,
}


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True, help="JSON config file")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--threads", type=int, default=1, help="worker pool size")
    parser.add_argument("--seed", type=int, default=None,
                        help="override the config master_seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="funspec",
        description="Frequency-domain analysis of stationary functional time series",
    )
    parser.add_argument("--version", action="version", version=VERSION_STRING)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("simulate", "observe", "fdft", "estimate", "invert",
                 "longrun", "robustness"):
        _add_common(sub.add_parser(name))
    bench = sub.add_parser("bench")
    bench_sub = bench.add_subparsers(dest="bench_command", required=True)
    for name in ("imse", "gauss", "clt"):
        _add_common(bench_sub.add_parser(name))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    command = args.command
    if command == "bench":
        command = f"bench {args.bench_command}"
    try:
        cfg = read_json(args.config)
        if not isinstance(cfg, dict):
            raise ConfigError("config must be a JSON object")
        _validate(cfg, command)
        if args.seed is not None and "master_seed" in SCHEMAS[command]["properties"]:
            cfg["master_seed"] = args.seed
        if args.threads < 1:
            raise ConfigError("--threads must be >= 1")
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        _HANDLERS[command](cfg, out, args.threads)
    except (ConfigError, ResolutionError) as exc:
        print(f"funspec: config error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"funspec: data error: {exc}", file=sys.stderr)
        return 3
    except (DataFormatError, DimensionError) as exc:
        print(f"funspec: data error: {exc}", file=sys.stderr)
        return 3
    except NumericsError as exc:
        print(f"funspec: numerical failure: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
