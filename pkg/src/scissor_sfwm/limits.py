"""
Analytic cross-checks: long-pulse pair rate, golden-rule ring sum, and the
collective-emission rate factor.

For a rectangular pump much longer than the photon dwelling time, the pair
probability per pulse reduces to a single frequency integral over the signal
resonance,

    |beta|^2/|alpha|^4 = (1/dT) (9 pi^3 / 2 eps0^2) (hbar w_P / v_g)^2
        * integral dw  w(2 w_P - w)/v_g^2 |J(w, 2w_P - w, w_P, w_P)|^2,

with a fully closed Lorentzian form

    |beta|^2/|alpha|^4 = 4 hbar^2 w_P^2 gamma^2 v_g l N^2 / ((1-sigma)^3 dT).

The same rate follows from a transition-rate calculation where each ring m
holds a coherent pump amplitude alpha_m and radiates pairs through its own
coupling factor; the coherent loading produced by a long pump pulse aligns
all ring contributions in phase, which is what makes the rate grow as N^2.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .constants import HBAR, VACUUM_PERMITTIVITY
from .phasematch import PhaseMatchInputs, big_j, j_ref, mu
from .structure import (
    DispersionModel,
    ResonanceTriplet,
    StructureParams,
    dwell_time,
    field_enhancement,
    fsr_angular,
    linewidth,
    transmission,
    transmission_phase,
    wavenumber,
)

SIGNAL_WINDOW_LINEWIDTHS = 50.0
SIGNAL_WINDOW_POINTS = 8193


def signal_window(
    params: StructureParams,
    triplet: ResonanceTriplet,
    n_points: int = SIGNAL_WINDOW_POINTS,
    half_width: float | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Simpson nodes and weights covering the signal resonance.

    The window is +/- 50 linewidths (clipped to half the resonance spacing
    so the next resonance never enters). Shared by the long-pulse and
    golden-rule integrals so their equivalence is exact to rounding.
    """
    if half_width is None:
        half_width = min(
            SIGNAL_WINDOW_LINEWIDTHS * linewidth(params), 0.5 * fsr_angular(params)
        )
    if n_points % 2 == 0 or n_points < 3:
        raise ValueError("n_points must be odd and >= 3")
    nodes = np.linspace(
        triplet.omega_signal - half_width,
        triplet.omega_signal + half_width,
        n_points,
    )
    spacing = nodes[1] - nodes[0]
    weights = np.ones(n_points)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    return nodes, weights * (spacing / 3.0)


def _rate_integral(params, omega, weights, omega_pump, summed_amplitude_sq):
    # integral dw  w(2w_P - w)/v_g^2 * |...|^2 with Simpson weights
    kinematic = omega * (2.0 * omega_pump - omega) / params.group_velocity**2
    return float(np.dot(weights, kinematic * summed_amplitude_sq))


def long_pulse_rate(
    params: StructureParams,
    model: DispersionModel,
    triplet: ResonanceTriplet,
    n_rings: int,
    pulse_duration: float,
    *,
    n_points: int = SIGNAL_WINDOW_POINTS,
) -> float:
    """
    Long-pulse pair probability per pulse, |beta|^2/|alpha|^4, by quadrature
    of the phase-matching function over the signal resonance.

    Valid for rectangular pulses much longer than the dwelling time; a
    warning is emitted below 10 dwelling times.
    """
    if pulse_duration <= 0:
        raise ValueError("pulse_duration must be positive")
    if pulse_duration < 10.0 * dwell_time(params):
        warnings.warn(
            "pulse_duration is below 10 dwelling times; the long-pulse "
            "approximation degrades",
            UserWarning,
            stacklevel=2,
        )
    omega, weights = signal_window(params, triplet, n_points)
    inputs = PhaseMatchInputs(
        omega, 2.0 * triplet.omega_pump - omega, triplet.omega_pump,
        triplet.omega_pump,
    )
    j_values = big_j(params, model, triplet, inputs, n_rings)
    integral = _rate_integral(
        params, omega, weights, triplet.omega_pump, np.abs(j_values) ** 2
    )
    prefactor = (
        (9.0 * np.pi**3 / (2.0 * VACUUM_PERMITTIVITY**2))
        * (HBAR * triplet.omega_pump / params.group_velocity) ** 2
        / pulse_duration
    )
    return prefactor * integral


def long_pulse_rate_closed_form(
    params: StructureParams,
    triplet: ResonanceTriplet,
    n_rings: int,
    pulse_duration: float,
) -> float:
    """
    Closed Lorentzian form of the long-pulse pair probability per pulse:

        4 hbar^2 w_P^2 gamma^2 v_g l N^2 / ((1 - sigma)^3 dT).

    Obtained from the quadrature form by freezing slow factors at w_P and
    integrating the squared Lorentzian pair, int (a^2/(x^2+a^2))^2 dx =
    pi a / 2. Cross-checked against ``long_pulse_rate`` in the test suite.
    """
    if pulse_duration <= 0:
        raise ValueError("pulse_duration must be positive")
    return (
        4.0
        * HBAR**2
        * triplet.omega_pump**2
        * params.nonlinear_gamma**2
        * params.group_velocity
        * params.circumference
        * n_rings**2
        / ((1.0 - params.self_coupling) ** 3 * pulse_duration)
    )


def pair_rate_from_energy_density(
    params: StructureParams,
    model: DispersionModel,
    triplet: ResonanceTriplet,
    n_rings: int,
    energy_density: float,
    *,
    n_points: int = SIGNAL_WINDOW_POINTS,
) -> float:
    """
    Pair generation rate [pairs/s] for a quasi-continuous pump of the given
    linear energy density [J/m]:

        rate = (9 pi^3 / 2 eps0^2) E^2
               * integral dw  w(2w_P - w)/v_g^2 |J|^2.

    With E = hbar w_P |alpha|^2 / (v_g dT) this equals
    long_pulse_rate * |alpha|^4 / dT.
    """
    if energy_density < 0:
        raise ValueError("energy_density must be >= 0")
    omega, weights = signal_window(params, triplet, n_points)
    inputs = PhaseMatchInputs(
        omega, 2.0 * triplet.omega_pump - omega, triplet.omega_pump,
        triplet.omega_pump,
    )
    j_values = big_j(params, model, triplet, inputs, n_rings)
    integral = _rate_integral(
        params, omega, weights, triplet.omega_pump, np.abs(j_values) ** 2
    )
    return (
        9.0 * np.pi**3 / (2.0 * VACUUM_PERMITTIVITY**2)
    ) * energy_density**2 * integral


@dataclass(frozen=True)
class RingLoading:
    """
    Coherent pump amplitudes alpha_m held by the individual rings.

    A long rectangular pulse of amplitude alpha loads ring m with

        alpha_m = alpha sqrt(l/(v_g dT)) e^{i k_P z_m} T(k_P)^(m-1) F(w_P),

    i.e. equal magnitudes and phases that advance by the bus propagation and
    transmission phases from ring to ring.
    """

    amplitudes: tuple

    def __post_init__(self) -> None:
        if len(self.amplitudes) < 1:
            raise ValueError("at least one ring amplitude is required")

    @property
    def n_rings(self) -> int:
        return len(self.amplitudes)

    @classmethod
    def from_pulse(
        cls,
        params: StructureParams,
        model: DispersionModel,
        triplet: ResonanceTriplet,
        n_rings: int,
        pulse_duration: float,
        alpha: complex = 1.0,
    ) -> "RingLoading":
        if pulse_duration <= 0:
            raise ValueError("pulse_duration must be positive")
        k_pump = wavenumber(model, triplet.omega_pump)
        t_pump = transmission(params, model, triplet.omega_pump)
        enhancement = field_enhancement(params, model, triplet.omega_pump)
        magnitude = alpha * np.sqrt(
            params.circumference / (params.group_velocity * pulse_duration)
        )
        positions = params.first_ring_position + params.ring_spacing * np.arange(
            n_rings
        )
        amplitudes = tuple(
            magnitude * np.exp(1j * k_pump * z) * t_pump**m * enhancement
            for m, z in enumerate(positions)
        )
        return cls(amplitudes=amplitudes)

    def scrambled(self, rng: np.random.Generator) -> "RingLoading":
        """Same magnitudes, independent uniform random phases."""
        phases = rng.uniform(0.0, 2.0 * np.pi, size=self.n_rings)
        return RingLoading(
            amplitudes=tuple(
                abs(a) * np.exp(1j * p) for a, p in zip(self.amplitudes, phases)
            )
        )


def _per_ring_coupling(
    params: StructureParams,
    model: DispersionModel,
    triplet: ResonanceTriplet,
    omega: np.ndarray,
    n_rings: int,
) -> np.ndarray:
    """
    Per-ring pair coupling factors F_m(w, 2w_P - w), shape (n_rings, len(w)).

    Built from the single-ring kernel and the ring-to-ring phases; the
    overall normalization routes through the measured nonlinearity, so no
    mode-overlap integral is needed.
    """
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    inputs = PhaseMatchInputs(
        omega, 2.0 * triplet.omega_pump - omega, triplet.omega_pump,
        triplet.omega_pump,
    )
    theta1 = transmission_phase(params, model, inputs.omega1)
    theta2 = transmission_phase(params, model, inputs.omega2)
    k1 = wavenumber(model, inputs.omega1)
    k2 = wavenumber(model, inputs.omega2)
    k_pump = wavenumber(model, triplet.omega_pump)
    mu_value = mu(params, model, inputs)
    shared = (
        np.exp(1j * n_rings * (theta1 + theta2))
        * np.exp(1j * (2.0 * k_pump - k1 - k2) * params.first_ring_position)
        * j_ref(params, model, triplet, inputs)
    )
    t_pump = transmission(params, model, triplet.omega_pump)
    enhancement = field_enhancement(params, model, triplet.omega_pump)
    positions = params.first_ring_position + params.ring_spacing * np.arange(n_rings)
    out = np.empty((n_rings, omega.size), dtype=complex)
    for m, z in enumerate(positions):
        ring_phase = np.exp(1j * mu_value * m)
        loading_phase = np.exp(2j * k_pump * z) * t_pump ** (2 * m)
        out[m] = shared * ring_phase / (
            loading_phase * enhancement**2 * params.ring_radius
        )
    return out


def fgr_rate(
    params: StructureParams,
    model: DispersionModel,
    triplet: ResonanceTriplet,
    loading: RingLoading,
    *,
    n_points: int = SIGNAL_WINDOW_POINTS,
) -> float:
    """
    Golden-rule pair generation rate [pairs/s] for given ring loadings:

        rate = (9 pi hbar^2 w_P^2 / 8 eps0^2)
               * integral dw  w(2w_P - w)/v_g^2
                 |sum_m alpha_m^2 F_m(w, 2w_P - w)|^2.

    With the coherent loading of ``RingLoading.from_pulse`` the ring sum
    telescopes onto the N-ring phase-matching function and
    rate * pulse_duration equals ``long_pulse_rate`` identically; scrambled
    loading phases strictly reduce the rate for two or more rings.
    """
    omega, weights = signal_window(params, triplet, n_points)
    couplings = _per_ring_coupling(params, model, triplet, omega, loading.n_rings)
    alpha_sq = np.asarray(
        [a * a for a in loading.amplitudes], dtype=complex
    )
    ring_sum = alpha_sq @ couplings
    integral = _rate_integral(
        params, omega, weights, triplet.omega_pump, np.abs(ring_sum) ** 2
    )
    return (
        9.0
        * np.pi
        * HBAR**2
        * triplet.omega_pump**2
        / (8.0 * VACUUM_PERMITTIVITY**2)
    ) * integral


def dicke_rate_factor(j: float, m: float) -> float:
    """
    Collective-emission rate factor (J + M)(J - M + 1) for N two-level
    emitters in the symmetric state |J, M>.

    Maximal at J = N/2, M = 0 where it scales as N^2; equal to N for the
    fully excited state and zero for the ground state.
    """
    if abs(m) > j + 1e-12:
        raise ValueError(f"|M| must not exceed J, got J={j}, M={m}")
    return (j + m) * (j - m + 1.0)
