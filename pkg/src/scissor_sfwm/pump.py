"""
Pump pulse spectral amplitudes.

Two bandwidth-limited pulse shapes are supported: a rectangular (top-hat)
pulse in time, whose spectrum is a sinc, and a Gaussian pulse specified by
its temporal intensity FWHM. Spectral amplitudes carry units of s**(1/2) and
are L2-normalized, ``integral |phi(w)|**2 dw = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

_GAUSS_TBP = np.sqrt(2.0 * np.log(2.0))  # sigma_w * tau_fwhm for a Gaussian


class PulseShape(Enum):
    TOP_HAT_SINC = "tophat"
    GAUSSIAN = "gaussian"


@dataclass(frozen=True)
class PumpPulse:
    """
    Pump pulse description.

    Parameters
    ----------
    shape : PulseShape
        Temporal shape of the pulse.
    center : float
        Center angular frequency [rad/s], normally a ring resonance.
    duration : float
        Pulse duration [s]. For TOP_HAT_SINC this is the full length dT of
        the rectangular pulse; for GAUSSIAN it is the intensity FWHM.
    photon_number : float
        Mean number of photons per pulse, |alpha|**2.
    """

    shape: PulseShape
    center: float
    duration: float
    photon_number: float = 1.0

    def __post_init__(self) -> None:
        if self.duration <= 0:
            raise ValueError(f"duration must be positive, got {self.duration}")
        if self.center <= 0:
            raise ValueError(f"center must be positive, got {self.center}")
        if self.photon_number < 0:
            raise ValueError("photon_number must be >= 0")

    @property
    def sinc_width(self) -> float:
        """Spectral sinc scale dw = 2/dT of a top-hat pulse [rad/s]."""
        if self.shape is not PulseShape.TOP_HAT_SINC:
            raise ValueError("sinc_width is defined for top-hat pulses only")
        return 2.0 / self.duration

    @property
    def sigma_omega(self) -> float:
        """
        Spectral amplitude width of a Gaussian pulse [rad/s].

        A bandwidth-limited Gaussian with temporal intensity FWHM tau has
        |phi(t)|**2 ~ exp(-t**2 * 4 ln2 / tau**2); its exact Fourier pair
        gives sigma_w = sqrt(2 ln2)/tau, where the spectral amplitude is
        ~ exp(-(w - w_P)**2 / (4 sigma_w**2)).
        """
        if self.shape is not PulseShape.GAUSSIAN:
            raise ValueError("sigma_omega is defined for Gaussian pulses only")
        return _GAUSS_TBP / self.duration


def spectral_amplitude(pulse: PumpPulse, omega):
    """
    Pump spectral amplitude phi_P(w) [s**(1/2)].

    Top-hat: phi(w) = (pi*dw)**(-1/2) * sinc((w - w_P)/dw), dw = 2/dT,
    with sinc(x) = sin(x)/x.
    Gaussian: phi(w) = (2 pi sigma**2)**(-1/4) * exp(-(w - w_P)**2/(4 sigma**2)).

    Both are real (flat spectral phase) and unit-normalized in |phi|**2.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValueError("omega must be positive")
    x = omega - pulse.center
    if pulse.shape is PulseShape.TOP_HAT_SINC:
        width = pulse.sinc_width
        # np.sinc is sin(pi x)/(pi x); rescale to sin(x)/x
        out = np.sinc(x / (np.pi * width)) / np.sqrt(np.pi * width)
    else:
        sig = pulse.sigma_omega
        out = (2 * np.pi * sig**2) ** (-0.25) * np.exp(-(x**2) / (4 * sig**2))
    return out if out.ndim else float(out)


def bandwidth_delta(pulse: PumpPulse) -> float:
    """
    Characteristic spectral width delta of the pump [rad/s].

    Defined as 1/tau for a Gaussian of intensity FWHM tau and 2/dT for a
    top-hat of length dT (the sinc scale). This is the scale entering the
    coherence ring number.
    """
    if pulse.shape is PulseShape.TOP_HAT_SINC:
        return pulse.sinc_width
    return 1.0 / pulse.duration
