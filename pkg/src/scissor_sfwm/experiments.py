"""
Experiment drivers behind the command line: deterministic CSV data files
plus JSON sidecars echoing the full configuration and solver diagnostics.

Floats are written with 17 significant digits so every value round-trips
exactly; no timestamps appear in data files.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import EfficiencySeries, extract_fwhm, fit_scaling_exponent
from .bwf import beta_squared_series, jsd_grid
from .config import ConfigError
from .phasematch import coherence_number
from .pump import bandwidth_delta
from .structure import (
    dwell_time,
    field_enhancement,
    field_enhancement_lorentzian,
    fsr,
    linewidth,
    quality_factor,
)

EXPERIMENT_NAMES = (
    "spectrum",
    "efficiency-vs-n",
    "jsd",
    "fwhm-vs-n",
    "coherence-number",
)


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n")


def _write_meta(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _meta_base(name: str, config: dict) -> dict:
    return {
        "tool": "scissor-sfwm",
        "version": __version__,
        "experiment": name,
        "config": config,
    }


def _numerics_kwargs(config: dict, params) -> dict:
    num = config["numerics"]
    half_width = None
    if num.get("grid_half_width_linewidths") is not None:
        half_width = float(num["grid_half_width_linewidths"]) * linewidth(params)
    return {
        "grid_points": num.get("grid_points"),
        "half_width": half_width,
        "inner_points": num.get("inner_points"),
        "backend": num.get("backend", "auto"),
        "threads": int(num.get("threads", 1)),
    }


def _run_spectrum(config, runtime, out_dir: Path) -> list[Path]:
    params, model, triplet, _pulse = runtime
    options = config["experiments"]["spectrum"]
    points = int(options["points"])
    span = float(options["span_linewidths"])
    if points < 3 or span <= 0:
        raise ConfigError("spectrum needs points >= 3 and a positive span")
    delta = linewidth(params)
    detuning = np.linspace(-span, span, points)
    omega = triplet.omega_pump + detuning * delta
    exact = np.abs(field_enhancement(params, model, omega)) ** 2
    lorentzian = np.abs(field_enhancement_lorentzian(params, model, omega)) ** 2
    csv_path = out_dir / "spectrum.csv"
    _write_csv(
        csv_path,
        ["detuning_over_linewidth", "enhancement_sq", "enhancement_sq_lorentzian"],
        zip(detuning, exact, lorentzian),
    )
    meta = _meta_base("spectrum", config)
    meta["derived"] = {
        "linewidth_rad_per_s": linewidth(params),
        "fsr_hz": fsr(params),
        "dwell_time_s": dwell_time(params),
        "quality_factor": quality_factor(params, triplet.omega_pump),
        "pump_resonance_rad_per_s": triplet.omega_pump,
    }
    meta_path = out_dir / "spectrum.meta.json"
    _write_meta(meta_path, meta)
    return [csv_path, meta_path]


def _ring_counts(options, key="ring_counts") -> list[int]:
    counts = options.get(key)
    if not counts:
        raise ConfigError(f"{key} must be a non-empty list of ring counts")
    counts = [int(n) for n in counts]
    if any(n < 1 for n in counts) or any(np.diff(counts) <= 0):
        raise ConfigError(f"{key} must be strictly increasing integers >= 1")
    return counts


def _run_efficiency_vs_n(config, runtime, out_dir: Path) -> list[Path]:
    params, model, triplet, pulse = runtime
    options = config["experiments"]["efficiency-vs-n"]
    counts = _ring_counts(options)
    kwargs = _numerics_kwargs(config, params)
    diagnostics = []
    betas = beta_squared_series(
        params, model, triplet, pulse, counts,
        diagnostics_out=diagnostics, **kwargs
    )
    efficiencies = [b / pulse.photon_number**2 for b in betas]
    series = EfficiencySeries(
        pump_label=f"{pulse.shape.value}:{pulse.duration:.3e}s",
        n_values=tuple(counts),
        efficiencies=tuple(efficiencies),
    )
    window = options.get("fit_window") or [counts[0], counts[-1]]
    try:
        exponent = fit_scaling_exponent(series, float(window[0]), float(window[1]))
    except ValueError as exc:
        raise ConfigError(f"cannot fit the scaling exponent: {exc}") from exc
    csv_path = out_dir / "efficiency_vs_n.csv"
    _write_csv(
        csv_path,
        ["n_rings", "efficiency"],
        zip(counts, efficiencies),
    )
    meta = _meta_base("efficiency-vs-n", config)
    meta["fit"] = {"window": [window[0], window[1]], "exponent": exponent}
    meta["coherence_number"] = coherence_number(params, bandwidth_delta(pulse))
    meta["diagnostics"] = diagnostics[-1]
    meta_path = out_dir / "efficiency_vs_n.meta.json"
    _write_meta(meta_path, meta)
    return [csv_path, meta_path]


def _run_jsd(config, runtime, out_dir: Path) -> list[Path]:
    params, model, triplet, pulse = runtime
    kwargs = _numerics_kwargs(config, params)
    grid = jsd_grid(
        params, model, triplet, pulse, params.num_rings, **kwargs
    )
    delta = linewidth(params)
    x = grid.signal_detunings()
    y = grid.idler_detunings()
    density = grid.density() * delta**2  # dimensionless per (detuning/linewidth)^2
    rows = (
        (x[i], y[j], density[i, j])
        for i in range(x.size)
        for j in range(y.size)
    )
    csv_path = out_dir / "jsd.csv"
    _write_csv(csv_path, ["signal_detuning", "idler_detuning", "density"], rows)
    meta = _meta_base("jsd", config)
    meta["result"] = {
        "beta_squared": grid.beta_squared,
        "n_rings": grid.n_rings,
        "grid_points": grid.signal_axis.n_points,
        "diagnostics": grid.diagnostics,
    }
    meta_path = out_dir / "jsd.meta.json"
    _write_meta(meta_path, meta)
    return [csv_path, meta_path]


def _run_fwhm_vs_n(config, runtime, out_dir: Path) -> list[Path]:
    params, model, triplet, pulse = runtime
    options = config["experiments"]["fwhm-vs-n"]
    counts = _ring_counts(options)
    kwargs = _numerics_kwargs(config, params)
    rows = []
    diagnostics = None
    for n_rings in counts:
        grid = jsd_grid(params, model, triplet, pulse, n_rings, **kwargs)
        report = extract_fwhm(grid)
        rows.append((n_rings, report.fwhm_diagonal, report.fwhm_antidiagonal))
        diagnostics = grid.diagnostics
    csv_path = out_dir / "fwhm_vs_n.csv"
    _write_csv(
        csv_path,
        ["n_rings", "fwhm_diagonal_over_linewidth", "fwhm_antidiagonal_over_linewidth"],
        rows,
    )
    meta = _meta_base("fwhm-vs-n", config)
    meta["diagnostics"] = diagnostics
    meta_path = out_dir / "fwhm_vs_n.meta.json"
    _write_meta(meta_path, meta)
    return [csv_path, meta_path]


def _run_coherence_number(config, runtime, out_dir: Path) -> list[Path]:
    params, _model, _triplet, _pulse = runtime
    options = config["experiments"]["coherence-number"]
    durations = options.get("durations_ns")
    if not durations:
        raise ConfigError("durations_ns must be a non-empty list")
    rows = []
    for tau_ns in durations:
        tau = float(tau_ns) * 1e-9
        if tau <= 0:
            raise ConfigError("durations_ns entries must be positive")
        delta_pump = 1.0 / tau
        rows.append((tau_ns, delta_pump, coherence_number(params, delta_pump)))
    csv_path = out_dir / "coherence_number.csv"
    _write_csv(
        csv_path,
        ["tau_pump_ns", "pump_bandwidth_rad_per_s", "coherence_number"],
        rows,
    )
    meta = _meta_base("coherence-number", config)
    meta["derived"] = {
        "linewidth_rad_per_s": linewidth(params),
        "dwell_time_s": dwell_time(params),
    }
    meta_path = out_dir / "coherence_number.meta.json"
    _write_meta(meta_path, meta)
    return [csv_path, meta_path]


_RUNNERS = {
    "spectrum": _run_spectrum,
    "efficiency-vs-n": _run_efficiency_vs_n,
    "jsd": _run_jsd,
    "fwhm-vs-n": _run_fwhm_vs_n,
    "coherence-number": _run_coherence_number,
}


def run_experiment(name: str, config: dict, out_dir: str | Path) -> list[Path]:
    """
    Run one named experiment and write its CSV + JSON outputs to out_dir.

    Returns the list of written paths. Raises ConfigError for unknown names
    or invalid options.
    """
    if name not in _RUNNERS:
        raise ConfigError(
            f"unknown experiment {name!r}; choose from {EXPERIMENT_NAMES}"
        )
    from .config import build_runtime

    runtime = build_runtime(config)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return _RUNNERS[name](config, runtime, out_dir)
