"""
Linear optics of a SCISSOR (N identical rings side-coupled to one bus waveguide).

Implements the single-ring all-pass transfer function, its transmission phase,
the intra-ring field enhancement factor, and the resonance bookkeeping
(linewidth, free spectral range, signal/pump/idler resonance triplet) used by
the nonlinear modules.

All frequencies are angular (rad/s) and all lengths are in meters. Dispersion
is modeled as linear in frequency (no group-velocity dispersion): the
wavenumber is affine, ``k(w) = k(w0) + (w - w0)/v_g``, anchored so that the
reference resonance of order M0 satisfies ``k(w0) * l = 2*pi*M0`` exactly.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .constants import SPEED_OF_LIGHT


@dataclass(frozen=True)
class StructureParams:
    """
    Geometry, coupling, dispersion, and nonlinearity of the ring sequence.

    Parameters
    ----------
    ring_radius : float
        Ring radius R [m].
    ring_spacing : float
        Center-to-center distance between neighboring rings [m].
    num_rings : int
        Number of rings N (>= 1).
    self_coupling : float
        Self-coupling amplitude sigma of the ring/bus point coupler,
        0 < sigma < 1. The cross coupling follows from energy conservation,
        kappa = sqrt(1 - sigma**2).
    phase_index : float
        Effective phase index n of the waveguide mode.
    group_velocity : float
        Group velocity v_g [m/s] (no group-velocity dispersion).
    nonlinear_gamma : float
        Effective third-order nonlinear parameter gamma [1/(W m)].
    first_ring_position : float
        Position z1 of the first ring along the bus [m].
    """

    ring_radius: float
    ring_spacing: float
    num_rings: int
    self_coupling: float
    phase_index: float
    group_velocity: float
    nonlinear_gamma: float
    first_ring_position: float = 0.0

    def __post_init__(self) -> None:
        if self.ring_radius <= 0:
            raise ValueError(f"ring_radius must be positive, got {self.ring_radius}")
        if self.ring_spacing <= 0:
            raise ValueError(f"ring_spacing must be positive, got {self.ring_spacing}")
        if self.num_rings < 1:
            raise ValueError(f"num_rings must be >= 1, got {self.num_rings}")
        if not 0 < self.self_coupling < 1:
            raise ValueError(
                f"self_coupling must be in (0, 1), got {self.self_coupling}"
            )
        if self.phase_index <= 0:
            raise ValueError(f"phase_index must be positive, got {self.phase_index}")
        if self.group_velocity <= 0:
            raise ValueError(
                f"group_velocity must be positive, got {self.group_velocity}"
            )
        if self.nonlinear_gamma <= 0:
            raise ValueError(
                f"nonlinear_gamma must be positive, got {self.nonlinear_gamma}"
            )
        if 1 - self.self_coupling > 0.1:
            warnings.warn(
                "self_coupling is far from the weak-coupling regime "
                f"(1 - sigma = {1 - self.self_coupling:.3g} > 0.1); derived "
                "Lorentzian approximations may be inaccurate",
                UserWarning,
                stacklevel=2,
            )

    @property
    def circumference(self) -> float:
        """Ring circumference l = 2*pi*R [m]."""
        return 2 * np.pi * self.ring_radius

    @property
    def cross_coupling(self) -> float:
        """Cross-coupling amplitude kappa = sqrt(1 - sigma**2)."""
        return float(np.sqrt(1.0 - self.self_coupling**2))


@dataclass(frozen=True)
class DispersionModel:
    """
    Linear (dispersionless) wavenumber model anchored at a ring resonance.

    Parameters
    ----------
    reference_order : int
        Azimuthal order M0 of the reference resonance.
    reference_frequency : float
        Angular frequency w0 of the reference resonance [rad/s].
    group_velocity : float
        Group velocity v_g [m/s].
    circumference : float
        Ring circumference l [m]; fixes k(w0) = 2*pi*M0 / l.
    """

    reference_order: int
    reference_frequency: float
    group_velocity: float
    circumference: float

    def __post_init__(self) -> None:
        if self.reference_order < 1:
            raise ValueError(
                f"reference_order must be >= 1, got {self.reference_order}"
            )
        if self.reference_frequency <= 0:
            raise ValueError("reference_frequency must be positive")
        if self.group_velocity <= 0:
            raise ValueError("group_velocity must be positive")
        if self.circumference <= 0:
            raise ValueError("circumference must be positive")

    @classmethod
    def from_structure(
        cls, params: StructureParams, reference_order: int
    ) -> "DispersionModel":
        """
        Anchor the model at resonance order M0 using the phase index.

        The reference frequency follows from ``k(w0) = n*w0/c = 2*pi*M0/l``,
        i.e. ``w0 = 2*pi*M0*c / (n*l)``.
        """
        length = params.circumference
        omega0 = 2 * np.pi * reference_order * SPEED_OF_LIGHT / (
            params.phase_index * length
        )
        return cls(
            reference_order=reference_order,
            reference_frequency=omega0,
            group_velocity=params.group_velocity,
            circumference=length,
        )

    @property
    def reference_wavenumber(self) -> float:
        """k(w0) = 2*pi*M0 / l [rad/m]."""
        return 2 * np.pi * self.reference_order / self.circumference


@dataclass(frozen=True)
class ResonanceTriplet:
    """
    Signal, pump, and idler ring resonances used for pair generation.

    Signal and idler occupy the orders adjacent to the pump (one free
    spectral range below and above, in either role assignment), so that
    ``2*omega_pump - omega_signal - omega_idler = 0``. The default
    convention puts the signal below the pump.
    """

    omega_signal: float
    omega_pump: float
    omega_idler: float
    signal_order: int
    pump_order: int
    idler_order: int

    def __post_init__(self) -> None:
        low, high = sorted((self.omega_signal, self.omega_idler))
        if not low < self.omega_pump < high:
            raise ValueError("pump must lie strictly between signal and idler")
        expected = (
            self.pump_order - 1
            if self.omega_signal < self.omega_pump
            else self.pump_order + 1
        )
        if self.signal_order != expected or self.idler_order != (
            2 * self.pump_order - expected
        ):
            raise ValueError(
                "signal/idler orders must be adjacent to the pump order and "
                "consistent with the frequency ordering"
            )

    @classmethod
    def adjacent(
        cls, params: StructureParams, model: DispersionModel
    ) -> "ResonanceTriplet":
        """Place signal and idler exactly one FSR below and above the pump."""
        spacing = fsr_angular(params)
        omega_p = model.reference_frequency
        return cls(
            omega_signal=omega_p - spacing,
            omega_pump=omega_p,
            omega_idler=omega_p + spacing,
            signal_order=model.reference_order - 1,
            pump_order=model.reference_order,
            idler_order=model.reference_order + 1,
        )

    def swapped(self) -> "ResonanceTriplet":
        """The same triplet with the signal and idler roles exchanged."""
        return ResonanceTriplet(
            omega_signal=self.omega_idler,
            omega_pump=self.omega_pump,
            omega_idler=self.omega_signal,
            signal_order=self.idler_order,
            pump_order=self.pump_order,
            idler_order=self.signal_order,
        )


def wavenumber(model: DispersionModel, omega):
    """
    Wavenumber k(w) = k(w0) + (w - w0)/v_g [rad/m].

    Parameters
    ----------
    model : DispersionModel
    omega : float or ndarray
        Angular frequency [rad/s], must be positive.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValueError("omega must be positive")
    k = model.reference_wavenumber + (omega - model.reference_frequency) / (
        model.group_velocity
    )
    return k if k.ndim else float(k)


def round_trip_phase(model: DispersionModel, omega):
    """Round-trip propagation phase k(w)*l [rad]."""
    return wavenumber(model, omega) * model.circumference


def transmission(params: StructureParams, model: DispersionModel, omega):
    """
    All-pass bus transmission T = (sigma - e^{ikl}) / (1 - sigma e^{ikl}).

    Lossless, so |T| = 1 for all frequencies.
    """
    sigma = params.self_coupling
    phase = np.exp(1j * round_trip_phase(model, omega))
    return (sigma - phase) / (1.0 - sigma * phase)


def transmission_phase(params: StructureParams, model: DispersionModel, omega):
    """
    Transmission phase theta(w) with exp(i*theta) = T.

    Uses theta = pi + kl + 2*arctan(sigma sin kl / (1 - sigma cos kl)). The
    arctan argument is bounded (|arg| <= sigma/sqrt(1 - sigma**2)) and its
    denominator never vanishes for sigma < 1, so this expression is smooth
    and strictly increasing in frequency with no branch cuts; it advances by
    exactly 2*pi per free spectral range.
    """
    sigma = params.self_coupling
    kl = round_trip_phase(model, omega)
    return np.pi + kl + 2.0 * np.arctan(
        sigma * np.sin(kl) / (1.0 - sigma * np.cos(kl))
    )


def field_enhancement(params: StructureParams, model: DispersionModel, omega):
    """
    Intra-ring field enhancement F(w) = i*kappa / (1 - sigma e^{ikl}).

    |F|**2 peaks at the ring resonances k(w)*l = 2*pi*M, reaching
    (1 + sigma)/(1 - sigma).
    """
    sigma = params.self_coupling
    kappa = params.cross_coupling
    phase = np.exp(1j * round_trip_phase(model, omega))
    return 1j * kappa / (1.0 - sigma * phase)


def resonance_lorentzian(detuning, linewidth_fwhm):
    """
    Unit-peak resonance factor L(x) = (D/2) / (x - i D/2).

    |L| = 1 at zero detuning and |L|**2 = 1/2 at x = +/- D/2, so D is the
    FWHM of |L|**2.
    """
    half = 0.5 * linewidth_fwhm
    return half / (np.asarray(detuning, dtype=complex) - 1j * half)


def nearest_resonance(params: StructureParams, model: DispersionModel, omega):
    """Frequency of the ring resonance closest to omega [rad/s]."""
    spacing = fsr_angular(params)
    omega = np.asarray(omega, dtype=float)
    n = np.round((omega - model.reference_frequency) / spacing)
    out = model.reference_frequency + n * spacing
    return out if out.ndim else float(out)


def field_enhancement_lorentzian(
    params: StructureParams, model: DispersionModel, omega
):
    """
    Lorentzian approximation of F(w) near the closest resonance w_M:

        F_L(w) = sqrt(2/(1 - sigma)) * (D/2) / ((w - w_M) - i D/2),

    with D the resonance FWHM. Accurate to a few percent within a few D of
    the resonance in the weak-coupling regime.
    """
    delta = linewidth(params)
    detuning = np.asarray(omega, dtype=float) - nearest_resonance(
        params, model, omega
    )
    return np.sqrt(2.0 / (1.0 - params.self_coupling)) * resonance_lorentzian(
        detuning, delta
    )


def linewidth(params: StructureParams) -> float:
    """Resonance FWHM Delta = 2*(1 - sigma)*v_g / l [rad/s]."""
    return 2.0 * (1.0 - params.self_coupling) * params.group_velocity / (
        params.circumference
    )


def fsr(params: StructureParams) -> float:
    """Free spectral range v_g / l [Hz]."""
    return params.group_velocity / params.circumference


def fsr_angular(params: StructureParams) -> float:
    """Resonance spacing in angular frequency, 2*pi*v_g / l [rad/s]."""
    return 2 * np.pi * fsr(params)


def dwell_time(params: StructureParams) -> float:
    """Photon dwelling time in a ring, 1/Delta [s]."""
    return 1.0 / linewidth(params)


def quality_factor(params: StructureParams, omega: float) -> float:
    """Loaded quality factor Q = omega / Delta."""
    if omega <= 0:
        raise ValueError("omega must be positive")
    return omega / linewidth(params)
