"""JSON scenarios that turn the physics modules into CSV tables and summaries.

Frequencies in a scenario file are ordinary frequencies in MHz (``value/2pi``);
they are converted to rad/s once, in :func:`load_scenario`.
"""
from __future__ import annotations

import copy
import json
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import jsonschema
import numpy as np

from . import analytic
from .correlations import (correlation_g2, delay_grid, emission_spectrum, flux, g2_zero,
                           spectral_peaks)
from .detection import (PowerCalibration, boxcar_kernel, delta_kernel, filter_g2, load_kernel,
                        omega_from_power, raised_cosine_kernel)
from .dressed import diagonalize, line_operators
from .errors import ConfigError
from .ladder import LadderParams, hamiltonian, lowering_operator, mhz, to_mhz
from .lindblad import liouvillian, steady_state

TASKS = ("spectrum", "g2", "sweep-omega", "sweep-delta", "validate")
LINES = ("FULL", "TPRF", "GE", "EF")

SCHEMA = {
    "type": "object",
    "required": ["task", "params"],
    "additionalProperties": False,
    "properties": {
        "task": {"enum": list(TASKS)},
        "params": {
            "type": "object",
            "required": ["n_levels", "alpha_MHz", "gamma_MHz"],
            "additionalProperties": False,
            "properties": {
                "n_levels": {"enum": [2, 3, 4]},
                "alpha_MHz": {"type": "number"},
                "delta_MHz": {"type": "number"},
                "omega_MHz": {"type": "number", "minimum": 0},
                "gamma_MHz": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "line": {"enum": list(LINES)},
        "grid": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "tau_max_over_gamma": {"type": "number", "exclusiveMinimum": 0},
                "n_delays": {"type": "integer", "minimum": 2},
                "window": {"enum": ["none", "hann"]},
                "pad_factor": {"type": "integer", "minimum": 1},
            },
        },
        "sweep": {
            "type": "object",
            "required": ["values"],
            "additionalProperties": False,
            "properties": {"values": {"type": "array", "items": {"type": "number"}}},
        },
        "validate": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"epsilons": {"type": "array", "minItems": 1, "items": {"type": "number", "exclusiveMinimum": 0}}},
        },
        "filter": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "shape": {"enum": ["boxcar", "raised_cosine", "delta"]},
                "bandwidth_MHz": {"type": "number", "exclusiveMinimum": 0},
                "file": {"type": "string"},
                "sample_period_ns": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "calibration": {
            "type": "object",
            "required": ["k", "input_power_W"],
            "additionalProperties": False,
            "properties": {
                "k": {"type": "number", "exclusiveMinimum": 0},
                "reference_attenuation_dB": {"type": "number"},
                "extra_attenuation_dB": {"type": "number"},
                "input_power_W": {"type": "number", "minimum": 0},
            },
        },
        "output": {"type": "string"},
    },
}

DEFAULT_GRID = {"tau_max_over_gamma": 20.0, "n_delays": 4096, "window": "none", "pad_factor": 2}
DEFAULT_EPSILONS = [0.05, 0.1, 0.15, 0.2]


@dataclass(frozen=True)
class Scenario:
    task: str
    params: LadderParams
    line: str
    grid: dict
    sweep_values: tuple
    epsilons: tuple
    filter: dict | None
    output: str
    config: dict


def _path(error):
    return ".".join(str(p) for p in error.absolute_path) or "<root>"


def parse_scenario(config, base_dir="."):
    """Validate a scenario dict and build a :class:`Scenario`."""
    try:
        jsonschema.validate(config, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"{_path(exc)}: {exc.message}") from None
    cfg = copy.deepcopy(config)
    task = cfg["task"]
    p = cfg["params"]
    p.setdefault("delta_MHz", 0.0)
    cal = cfg.get("calibration")
    if cal is not None:
        if "omega_MHz" in p:
            raise ConfigError("params.omega_MHz: give either omega_MHz or a calibration, not both")
        cal.setdefault("reference_attenuation_dB", 0.0)
        cal.setdefault("extra_attenuation_dB", 0.0)
        c = PowerCalibration(cal["k"], cal["reference_attenuation_dB"] + cal["extra_attenuation_dB"])
        omega = omega_from_power(cal["input_power_W"], c)
    elif "omega_MHz" in p:
        omega = mhz(p["omega_MHz"])
    elif task in ("spectrum", "g2", "sweep-delta"):
        raise ConfigError("params.omega_MHz: required for this task")
    else:
        omega = 0.0
    default_line = "FULL" if task == "spectrum" else "TPRF"
    line = cfg.setdefault("line", default_line)
    n = p["n_levels"]
    if task in ("sweep-omega", "sweep-delta", "validate") and n != 3:
        raise ConfigError(f"params.n_levels: task {task} needs n_levels = 3")
    if line != "FULL" and n != 3:
        raise ConfigError(f"line: line {line} needs n_levels = 3")
    grid = dict(DEFAULT_GRID)
    grid.update(cfg.get("grid", {}))
    cfg["grid"] = grid
    values = ()
    if task.startswith("sweep"):
        if "sweep" not in cfg:
            raise ConfigError("sweep: required for sweep tasks")
        values = tuple(float(v) for v in cfg["sweep"]["values"])
        if not values:
            raise ConfigError("sweep.values: grid must not be empty")
        if len(values) > 1 and not np.all(np.diff(values) > 0):
            raise ConfigError("sweep.values: grid must be strictly increasing")
    epsilons = tuple(cfg.get("validate", {}).get("epsilons", DEFAULT_EPSILONS))
    filt = cfg.get("filter")
    if filt is not None:
        filt = dict(filt)
        if "file" in filt:
            if "sample_period_ns" not in filt:
                raise ConfigError("filter.sample_period_ns: required with filter.file")
            filt["file"] = str(Path(base_dir) / filt["file"])
        else:
            filt.setdefault("shape", "boxcar")
            filt.setdefault("bandwidth_MHz", 12.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            params = LadderParams(n, mhz(p["alpha_MHz"]), mhz(p["delta_MHz"]), float(omega), mhz(p["gamma_MHz"]))
        except ValueError as exc:
            raise ConfigError(f"params: {exc}") from None
    return Scenario(task, params, line, grid, values, epsilons, filt, cfg.get("output", task), cfg)


def load_scenario(path):
    path = Path(path)
    try:
        config = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"<file>: cannot read {path}: {exc}") from None
    return parse_scenario(config, base_dir=path.parent)


def _field(params, line):
    b = lowering_operator(params.n_levels)
    if line == "FULL":
        return b
    _, ops = line_operators(params)
    return ops[line]


def _kernel(filt, dt):
    if "file" in filt:
        return load_kernel(filt["file"], filt["sample_period_ns"] * 1e-9)
    if filt["shape"] == "delta":
        return delta_kernel(dt)
    builder = boxcar_kernel if filt["shape"] == "boxcar" else raised_cosine_kernel
    return builder(filt["bandwidth_MHz"] * 1e6, dt)


def _fmt(x):
    return format(float(x), ".17g")


def write_csv(path, header, columns):
    rows = zip(*columns)
    with open(path, "w", newline="\n") as fh:
        fh.write("# " + ", ".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _params_mhz(params):
    return {
        "n_levels": params.n_levels,
        "alpha_MHz": float(to_mhz(params.alpha)),
        "delta_MHz": float(to_mhz(params.delta)),
        "omega_MHz": float(to_mhz(params.omega)),
        "gamma_MHz": float(to_mhz(params.gamma)),
    }


def _base_summary(s, rho, warn_list):
    params = s.params
    summary = {
        "params": _params_mhz(params),
        "dressed_frequencies_MHz": None,
        "steady_populations_dressed": None,
        "flux_over_gamma": None,
        "g2_zero": None,
        "warnings": warn_list,
        "config": s.config,
    }
    if params.n_levels == 3:
        basis = diagonalize(hamiltonian(params))
        summary["dressed_frequencies_MHz"] = [float(v) for v in to_mhz(basis.eigenvalues)]
        summary["steady_populations_dressed"] = [float(v) for v in basis.populations(rho)]
    F = _field(params, s.line)
    summary["flux_over_gamma"] = flux(rho, F)
    try:
        summary["g2_zero"] = g2_zero(rho, F)
    except ZeroDivisionError:
        warn_list.append(f"g2_zero undefined: no emission on line {s.line}")
    return summary


def _run_spectrum(s, out):
    params = s.params
    L = liouvillian(params)
    rho = steady_state(L)
    F = np.sqrt(params.gamma) * _field(params, s.line)
    delays = delay_grid(params.gamma, s.grid["tau_max_over_gamma"], s.grid["n_delays"])
    spectrum = emission_spectrum(L, rho, F, delays, window=s.grid["window"], pad_factor=s.grid["pad_factor"])
    path = Path(f"{out}.csv")
    write_csv(path, ["omega_minus_omega_d_over_2pi_MHz", "psd"], [to_mhz(spectrum.frequencies), spectrum.psd])
    warn_list = []
    summary = _base_summary(s, rho, warn_list)
    if spectrum.psd.max() > 0:
        peaks, _ = spectral_peaks(spectrum)
        summary["peaks_MHz"] = [float(v) for v in to_mhz(peaks)]
    else:
        summary["peaks_MHz"] = []
    return [path], summary


def _run_g2(s, out):
    params = s.params
    L = liouvillian(params)
    rho = steady_state(L)
    F = np.sqrt(params.gamma) * _field(params, s.line)
    delays = delay_grid(params.gamma, s.grid["tau_max_over_gamma"], s.grid["n_delays"])
    trace = correlation_g2(L, rho, F, delays, normalize=True)
    header = ["tau_ns", "g2_normalized"]
    columns = [delays * 1e9, trace.values]
    if s.filter is not None:
        filtered = filter_g2(trace, _kernel(s.filter, delays[1] - delays[0]))
        header.append("g2_filtered")
        columns.append(filtered.values)
    path = Path(f"{out}.csv")
    write_csv(path, header, columns)
    summary = _base_summary(s, rho, [])
    if s.filter is not None:
        summary["g2_filtered_zero"] = float(columns[2][0])
    return [path], summary


def sweep_point(params, line="TPRF"):
    """``(flux/Gamma, g2(0))`` of one line in the steady state of ``params``."""
    rho = steady_state(liouvillian(params))
    F = _field(params, line)
    n = flux(rho, F)
    g2 = g2_zero(rho, F) if n > 1e-14 else float("nan")
    return n, g2


def sweep(s, jobs=1):
    """Evaluate an Omega or delta sweep; rows are ``(value, flux/Gamma, g2(0))``.

    Omega sweeps take values of ``Omega/|alpha|``, delta sweeps values of
    ``delta/Gamma``. Points are independent, so ``jobs > 1`` evaluates them
    concurrently without changing the result.
    """
    base = s.params
    if s.task == "sweep-omega":
        points = [base.with_(omega=v * abs(base.alpha)) for v in s.sweep_values]
    elif s.task == "sweep-delta":
        points = [base.with_(delta=v * base.gamma) for v in s.sweep_values]
    else:
        raise ConfigError(f"task: {s.task} is not a sweep")
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda p: sweep_point(p, s.line), points))
    else:
        results = [sweep_point(p, s.line) for p in points]
    values = np.array(s.sweep_values)
    fluxes = np.array([r[0] for r in results])
    g2s = np.array([r[1] for r in results])
    return values, fluxes, g2s


def _run_sweep(s, out, jobs):
    values, fluxes, g2s = sweep(s, jobs)
    path = Path(f"{out}.csv")
    write_csv(path, ["sweep_value", "flux_over_gamma", "g2_zero"], [values, fluxes, g2s])
    rho = steady_state(liouvillian(s.params))
    warn_list = []
    summary = _base_summary(s, rho, warn_list) if s.params.omega > 0 else {
        "params": _params_mhz(s.params), "dressed_frequencies_MHz": None,
        "steady_populations_dressed": None, "flux_over_gamma": None, "g2_zero": None,
        "warnings": warn_list, "config": s.config,
    }
    finite = np.isfinite(g2s)
    if finite.any():
        i = int(np.argmax(np.where(finite, g2s, -np.inf)))
        summary["sweep_g2_max"] = {"sweep_value": float(values[i]), "g2_zero": float(g2s[i])}
    j = int(np.argmax(fluxes))
    summary["sweep_flux_max"] = {"sweep_value": float(values[j]), "flux_over_gamma": float(fluxes[j])}
    return [path], summary


def validation_table(alpha, gamma, epsilons):
    """Numeric versus closed-form flux and ``g2(0)`` of the TPRF line at ``delta = 0``."""
    rows = []
    for eps in epsilons:
        params = LadderParams(3, alpha, 0.0, eps * abs(alpha), gamma)
        flux_num, g2_num = sweep_point(params, "TPRF")
        ap = analytic.AnalyticParams.from_rates(params.omega, alpha, gamma)
        flux_an = analytic.analytic_flux(ap, gamma) / gamma
        g2_an = analytic.analytic_g2zero(params.omega, alpha, gamma)
        rows.append((eps, flux_num, flux_an, flux_num / flux_an - 1.0, g2_num, g2_an, g2_num / g2_an - 1.0))
    return np.array(rows)


def _run_validate(s, out):
    params = s.params
    if params.delta != 0:
        raise ConfigError("params.delta_MHz: the closed forms hold at delta = 0 only")
    table = validation_table(params.alpha, params.gamma, s.epsilons)
    header = ["epsilon", "flux_over_gamma_numeric", "flux_over_gamma_analytic", "flux_rel_err",
              "g2_zero_numeric", "g2_zero_analytic", "g2_rel_err"]
    path = Path(f"{out}.csv")
    write_csv(path, header, table.T)
    omega_star, g2_star = analytic.g2max_point(params.alpha, params.gamma)
    summary = {
        "params": _params_mhz(params),
        "dressed_frequencies_MHz": None,
        "steady_populations_dressed": None,
        "flux_over_gamma": [float(v) for v in table[:, 1]],
        "g2_zero": [float(v) for v in table[:, 4]],
        "warnings": [],
        "config": s.config,
        "validation": [dict(zip(header, map(float, row))) for row in table],
        "max_abs_rel_err": float(np.max(np.abs(table[:, [3, 6]]))),
        "analytic_g2_max": {"omega_MHz": float(to_mhz(omega_star)), "g2_zero": g2_star},
    }
    return [path], summary


def run_scenario(s, out=None, jobs=1):
    """Run a scenario, write ``<out>.csv`` and ``<out>.json``, return (paths, summary)."""
    out = out if out is not None else s.output
    Path(out).parent.mkdir(parents=True, exist_ok=True)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if s.task == "spectrum":
            paths, summary = _run_spectrum(s, out)
        elif s.task == "g2":
            paths, summary = _run_g2(s, out)
        elif s.task in ("sweep-omega", "sweep-delta"):
            paths, summary = _run_sweep(s, out, jobs)
        else:
            paths, summary = _run_validate(s, out)
    messages = summary["warnings"] + [str(w.message) for w in caught]
    summary["warnings"] = sorted(set(messages))
    json_path = Path(f"{out}.json")
    json_path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return paths + [json_path], summary
