"""
Phase matching across the ring sequence.

Two pump photons at (w3, w4) convert to a signal/idler pair at (w1, w2).
Each ring contributes the same single-ring kernel ``j_ref`` up to a
ring-to-ring phase ``mu``; summing the geometric phase progression over N
rings yields the Dirichlet factor sin(N mu/2)/sin(mu/2) and a global phase
``chi``. When mu = 0 all rings radiate in phase and the pair amplitude picks
up a factor N (rate ~ N**2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import VACUUM_PERMITTIVITY
from .structure import (
    DispersionModel,
    ResonanceTriplet,
    StructureParams,
    linewidth,
    resonance_lorentzian,
    transmission_phase,
    wavenumber,
)

_DIRICHLET_GUARD = 1e-9  # |sin(mu/2)| below which the series limit is used


@dataclass(frozen=True)
class PhaseMatchInputs:
    """
    Frequency 4-tuple of a four-wave mixing event [rad/s].

    (omega1, omega2) are the generated signal/idler-side frequencies and
    (omega3, omega4) the pump-side ones. Energy-conserving callers enforce
    omega4 = omega1 + omega2 - omega3.
    """

    omega1: float
    omega2: float
    omega3: float
    omega4: float

    @classmethod
    def energy_conserving(
        cls, omega1, omega2, omega3
    ) -> "PhaseMatchInputs":
        return cls(omega1, omega2, omega3, omega1 + omega2 - omega3)

    def detuning_sum(self, triplet: ResonanceTriplet):
        """u = (w1 - w_S) + (w2 - w_I), the energy mismatch from resonance."""
        return (self.omega1 - triplet.omega_signal) + (
            self.omega2 - triplet.omega_idler
        )

    def detuning_difference(self, triplet: ResonanceTriplet):
        """eta = (w1 - w_S) - (w2 - w_I)."""
        return (self.omega1 - triplet.omega_signal) - (
            self.omega2 - triplet.omega_idler
        )


@dataclass(frozen=True)
class RingKernelConstant:
    """
    Nonlinear overlap constant K of the single-ring kernel.

    K re-expresses the ring's third-order mode-overlap integral through the
    measured effective nonlinearity gamma:

        K = l * 4 eps0 v_g**2 gamma / (3 w_P (2 pi)**2),

    which makes the pair amplitude dimensionally consistent without knowing
    the transverse mode profiles.
    """

    overlap: float

    def __post_init__(self) -> None:
        if self.overlap <= 0:
            raise ValueError("overlap must be positive")

    @classmethod
    def from_structure(
        cls, params: StructureParams, omega_pump: float
    ) -> "RingKernelConstant":
        value = (
            params.circumference
            * 4.0
            * VACUUM_PERMITTIVITY
            * params.group_velocity**2
            * params.nonlinear_gamma
            / (3.0 * omega_pump * (2 * np.pi) ** 2)
        )
        return cls(overlap=value)


def mu(params: StructureParams, model: DispersionModel, inputs: PhaseMatchInputs):
    """
    Ring-to-ring phase advance mu [rad]:

        mu = (k3 + k4 - k1 - k2) * spacing
             + theta(k3) + theta(k4) - theta(k1) - theta(k2),

    with theta the bus transmission phase. mu vanishes identically for
    on-resonance pump inputs with w2 = 2 w_P - w1 (the wavenumber mismatch
    cancels by linear dispersion and the theta sums telescope).
    """
    k1 = wavenumber(model, inputs.omega1)
    k2 = wavenumber(model, inputs.omega2)
    k3 = wavenumber(model, inputs.omega3)
    k4 = wavenumber(model, inputs.omega4)
    theta = lambda w: transmission_phase(params, model, w)  # noqa: E731
    return (k3 + k4 - k1 - k2) * params.ring_spacing + (
        theta(inputs.omega3)
        + theta(inputs.omega4)
        - theta(inputs.omega1)
        - theta(inputs.omega2)
    )


def mu_energy_conserving(
    params: StructureParams, model: DispersionModel, inputs: PhaseMatchInputs
):
    """
    Reduced form of mu for energy-conserving inputs (w3 + w4 = w1 + w2).

    With linear dispersion the wavenumber-mismatch term cancels exactly and

        mu = theta(k3) + theta(k4) - theta(k1) - theta(k2).
    """
    theta = lambda w: transmission_phase(params, model, w)  # noqa: E731
    return (
        theta(inputs.omega3)
        + theta(inputs.omega4)
        - theta(inputs.omega1)
        - theta(inputs.omega2)
    )


def chi(
    params: StructureParams,
    model: DispersionModel,
    inputs: PhaseMatchInputs,
    n_rings: int,
):
    """
    Global phase chi [rad] of the N-ring sum:

        chi = (k3 + k4 - k1 - k2) * z1 + N*(theta(k1) + theta(k2))
              + (N - 1)*mu/2.
    """
    k1 = wavenumber(model, inputs.omega1)
    k2 = wavenumber(model, inputs.omega2)
    k3 = wavenumber(model, inputs.omega3)
    k4 = wavenumber(model, inputs.omega4)
    theta = lambda w: transmission_phase(params, model, w)  # noqa: E731
    return (
        (k3 + k4 - k1 - k2) * params.first_ring_position
        + n_rings * (theta(inputs.omega1) + theta(inputs.omega2))
        + (n_rings - 1) * mu(params, model, inputs) / 2.0
    )


def dirichlet_factor(mu_value, n_rings: int):
    """
    N-source interference envelope sin(N mu/2) / sin(mu/2).

    The removable singularity at mu = 0 (mod 2 pi) is guarded: for
    |sin(mu/2)| < 1e-9 the series limit N*(1 - (N**2 - 1) x**2 / 6) at
    x = mu/2 is returned. Bounded by N in magnitude, with equality iff
    mu = 0 (mod 2 pi).
    """
    if n_rings < 1:
        raise ValueError(f"n_rings must be >= 1, got {n_rings}")
    x = np.asarray(mu_value, dtype=float) / 2.0
    sin_x = np.sin(x)
    small = np.abs(sin_x) < _DIRICHLET_GUARD
    # series limit near x = p*pi, where sin(Nx)/sin(x) -> (-1)^(p(N-1)) * N
    p = np.round(x / np.pi)
    eps = x - np.pi * p
    limit = n_rings * (1.0 - (n_rings**2 - 1) * eps**2 / 6.0)
    sign = np.where((np.abs(p).astype(np.int64) * (n_rings - 1)) % 2 == 1, -1.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.sin(n_rings * x) / sin_x
    out = np.where(small, sign * limit, ratio)
    return out if out.ndim else float(out)


def j_ref(
    params: StructureParams,
    model: DispersionModel,
    triplet: ResonanceTriplet,
    inputs: PhaseMatchInputs,
):
    """
    Single-ring pair-generation kernel (Lorentzian-factorized form):

        j_ref = (2/(1 - sigma))**2 * L(w1 - w_S) L(w2 - w_I)
                * L(w3 - w_P) L(w4 - w_P) * K,

    with L(x) = (D/2)/(x - i D/2) and K the nonlinear overlap constant.
    Valid for frequencies within a few linewidths of their resonances; the
    residual intra-ring propagation phase is dropped, which is exact for
    energy-conserving inputs and an O(delta/FSR) correction otherwise.
    """
    delta = linewidth(params)
    const = RingKernelConstant.from_structure(params, triplet.omega_pump)
    scale = (2.0 / (1.0 - params.self_coupling)) ** 2 * const.overlap
    return (
        scale
        * resonance_lorentzian(inputs.omega1 - triplet.omega_signal, delta)
        * resonance_lorentzian(inputs.omega2 - triplet.omega_idler, delta)
        * resonance_lorentzian(inputs.omega3 - triplet.omega_pump, delta)
        * resonance_lorentzian(inputs.omega4 - triplet.omega_pump, delta)
    )


def big_j(
    params: StructureParams,
    model: DispersionModel,
    triplet: ResonanceTriplet,
    inputs: PhaseMatchInputs,
    n_rings: int,
):
    """
    N-ring phase matching function

        J = exp(i chi) * [sin(N mu/2)/sin(mu/2)] * j_ref.

    |J|**2 = N**2 |j_ref|**2 whenever mu = 0, in particular for on-resonance
    pump inputs with w2 = 2 w_P - w1.
    """
    mu_value = mu(params, model, inputs)
    return (
        np.exp(1j * chi(params, model, inputs, n_rings))
        * dirichlet_factor(mu_value, n_rings)
        * j_ref(params, model, triplet, inputs)
    )


def coherence_number(params: StructureParams, pump_bandwidth: float) -> float:
    """
    Ring count at which N**2 scaling rolls over toward N:

        N_coh = (pi/2) * Delta / delta = (pi/2) * tau_pump / tau_dwell,

    with delta the pump spectral width (1/tau_pump) and Delta the resonance
    FWHM (1/tau_dwell). Returned as a float; round for display.
    """
    if pump_bandwidth <= 0:
        raise ValueError("pump_bandwidth must be positive")
    return 0.5 * np.pi * linewidth(params) / pump_bandwidth
