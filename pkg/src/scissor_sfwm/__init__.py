"""
Photon-pair generation by spontaneous four-wave mixing in a sequence of
identical ring resonators side-coupled to one bus waveguide.

The package computes two-photon spectral amplitudes (joint spectral
amplitudes), pair-generation probabilities, and their scaling with ring
count and pump duration, together with the analytic long-pulse and
golden-rule limits used to cross-check the numerics.
"""

__version__ = "0.1.0"

from .analysis import (
    EfficiencySeries,
    FwhmReport,
    GridTooSmallError,
    extract_fwhm,
    fit_scaling_exponent,
)
from .bwf import (
    BwfGrid,
    FrequencyGrid,
    QuadratureConvergenceError,
    beta_squared,
    beta_squared_series,
    bwf_amplitude,
    default_grids,
    default_inner_rule,
    jsd_grid,
)
from .kernels import DEFAULT_BACKEND, available_backends
from .limits import (
    RingLoading,
    dicke_rate_factor,
    fgr_rate,
    long_pulse_rate,
    long_pulse_rate_closed_form,
    pair_rate_from_energy_density,
)
from .phasematch import (
    PhaseMatchInputs,
    RingKernelConstant,
    big_j,
    chi,
    coherence_number,
    dirichlet_factor,
    j_ref,
    mu,
    mu_energy_conserving,
)
from .pump import PulseShape, PumpPulse, bandwidth_delta, spectral_amplitude
from .structure import (
    DispersionModel,
    ResonanceTriplet,
    StructureParams,
    dwell_time,
    field_enhancement,
    field_enhancement_lorentzian,
    fsr,
    fsr_angular,
    linewidth,
    quality_factor,
    transmission,
    transmission_phase,
    wavenumber,
)

__all__ = [
    "BwfGrid",
    "DEFAULT_BACKEND",
    "DispersionModel",
    "EfficiencySeries",
    "FrequencyGrid",
    "FwhmReport",
    "GridTooSmallError",
    "PhaseMatchInputs",
    "PulseShape",
    "PumpPulse",
    "QuadratureConvergenceError",
    "ResonanceTriplet",
    "RingKernelConstant",
    "RingLoading",
    "StructureParams",
    "available_backends",
    "bandwidth_delta",
    "beta_squared",
    "beta_squared_series",
    "big_j",
    "bwf_amplitude",
    "chi",
    "coherence_number",
    "default_grids",
    "default_inner_rule",
    "dicke_rate_factor",
    "dirichlet_factor",
    "dwell_time",
    "extract_fwhm",
    "fgr_rate",
    "field_enhancement",
    "field_enhancement_lorentzian",
    "fit_scaling_exponent",
    "fsr",
    "fsr_angular",
    "j_ref",
    "jsd_grid",
    "linewidth",
    "long_pulse_rate",
    "long_pulse_rate_closed_form",
    "mu",
    "mu_energy_conserving",
    "pair_rate_from_energy_density",
    "quality_factor",
    "spectral_amplitude",
    "transmission",
    "transmission_phase",
    "wavenumber",
]
