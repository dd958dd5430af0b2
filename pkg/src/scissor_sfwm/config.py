"""
Configuration loading for the command-line drivers.

Configs are JSON files with SI-friendly units (micrometers, nanoseconds) that
are converted to base SI at load time. Every field has a default matching a
standard silicon-on-insulator ring sequence (5 um rings spaced 15 um apart,
phase index 2.5, group velocity 0.75e8 m/s, 1 - sigma = 0.0126, pump at the
50th resonance, gamma = 200 /(W m)), so an empty config is a complete run.
"""

from __future__ import annotations

import copy
import json
from pathlib import Path

from .pump import PulseShape, PumpPulse
from .structure import DispersionModel, ResonanceTriplet, StructureParams


class ConfigError(ValueError):
    """Invalid or inconsistent configuration input."""


DEFAULT_CONFIG = {
    "structure": {
        "ring_radius_um": 5.0,
        "ring_spacing_um": 15.0,
        "num_rings": 1,
        "one_minus_sigma": 0.0126,
        "phase_index": 2.5,
        "group_velocity_m_per_s": 7.5e7,
        "nonlinear_gamma_per_w_m": 200.0,
        "first_ring_position_um": 0.0,
        "pump_resonance_order": 50,
    },
    "pump": {
        "shape": "gaussian",
        "duration_ns": 0.1,
        "photon_number": 1.0,
    },
    "numerics": {
        "grid_points": None,
        "grid_half_width_linewidths": None,
        "inner_points": None,
        "backend": "auto",
        "threads": 1,
    },
    "experiments": {
        "spectrum": {"points": 8193, "span_linewidths": 350.0},
        "efficiency-vs-n": {"ring_counts": list(range(1, 51)), "fit_window": None},
        "jsd": {},
        "fwhm-vs-n": {"ring_counts": [1, 2, 3, 4, 5, 7, 10, 15, 20, 30, 40]},
        "coherence-number": {"durations_ns": [1.0, 0.1, 0.01]},
    },
}

_PULSE_SHAPES = {
    "gaussian": PulseShape.GAUSSIAN,
    "tophat": PulseShape.TOP_HAT_SINC,
}


def _merge(base: dict, override: dict, path: str = "") -> dict:
    out = copy.deepcopy(base)
    for key, value in override.items():
        where = f"{path}.{key}" if path else key
        if key not in base:
            raise ConfigError(
                f"unknown configuration key {where!r}; known keys here: "
                f"{sorted(base)}"
            )
        if isinstance(base[key], dict) and isinstance(value, dict):
            out[key] = _merge(base[key], value, where)
        else:
            out[key] = copy.deepcopy(value)
    return out


def load_config(path: str | Path | None = None) -> dict:
    """Merge a JSON config file (if given) over the defaults."""
    if path is None:
        return copy.deepcopy(DEFAULT_CONFIG)
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config root must be a JSON object")
    return _merge(DEFAULT_CONFIG, data)


def build_structure(config: dict) -> StructureParams:
    s = config["structure"]
    try:
        return StructureParams(
            ring_radius=float(s["ring_radius_um"]) * 1e-6,
            ring_spacing=float(s["ring_spacing_um"]) * 1e-6,
            num_rings=int(s["num_rings"]),
            self_coupling=1.0 - float(s["one_minus_sigma"]),
            phase_index=float(s["phase_index"]),
            group_velocity=float(s["group_velocity_m_per_s"]),
            nonlinear_gamma=float(s["nonlinear_gamma_per_w_m"]),
            first_ring_position=float(s["first_ring_position_um"]) * 1e-6,
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid structure parameters: {exc}") from exc


def build_runtime(
    config: dict,
) -> tuple[StructureParams, DispersionModel, ResonanceTriplet, PumpPulse]:
    """Structure, dispersion anchor, resonance triplet, and pump pulse."""
    params = build_structure(config)
    try:
        model = DispersionModel.from_structure(
            params, int(config["structure"]["pump_resonance_order"])
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid dispersion anchor: {exc}") from exc
    triplet = ResonanceTriplet.adjacent(params, model)
    pump_cfg = config["pump"]
    shape_name = str(pump_cfg["shape"]).lower()
    if shape_name not in _PULSE_SHAPES:
        raise ConfigError(
            f"unknown pump shape {pump_cfg['shape']!r}; "
            f"choose from {sorted(_PULSE_SHAPES)}"
        )
    try:
        pulse = PumpPulse(
            shape=_PULSE_SHAPES[shape_name],
            center=triplet.omega_pump,
            duration=float(pump_cfg["duration_ns"]) * 1e-9,
            photon_number=float(pump_cfg["photon_number"]),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid pump parameters: {exc}") from exc
    return params, model, triplet, pulse
