import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import sici

from scissor_sfwm import (
    PulseShape,
    PumpPulse,
    bandwidth_delta,
    dwell_time,
    linewidth,
    spectral_amplitude,
)

CENTER = 1.2e15


def _tophat(duration):
    return PumpPulse(PulseShape.TOP_HAT_SINC, CENTER, duration)


def _gaussian(duration):
    return PumpPulse(PulseShape.GAUSSIAN, CENTER, duration)


def test_validation():
    with pytest.raises(ValueError):
        _tophat(0.0)
    with pytest.raises(ValueError):
        _gaussian(-1e-9)
    with pytest.raises(ValueError):
        PumpPulse(PulseShape.GAUSSIAN, -1.0, 1e-9)
    with pytest.raises(ValueError):
        PumpPulse(PulseShape.GAUSSIAN, CENTER, 1e-9, photon_number=-2.0)
    with pytest.raises(ValueError):
        spectral_amplitude(_gaussian(1e-9), 0.0)


def test_tophat_peak_and_zeros():
    pulse = _tophat(1e-9)
    width = pulse.sinc_width
    assert width == pytest.approx(2e9)
    peak = spectral_amplitude(pulse, CENTER)
    assert peak == pytest.approx(1 / np.sqrt(np.pi * width))
    # zero sharpness is limited by the absolute-frequency rounding,
    # ulp(center) * dT / 2 ~ 1e-10 relative
    for n in (1, 2, 5, -3):
        value = spectral_amplitude(pulse, CENTER + np.pi * width * n)
        assert abs(value) < 1e-8 * peak


def test_tophat_normalization_with_tail():
    # finite quadrature over +/- X plus the analytic sinc^2 tail
    # integral_{|t|>X} sinc^2 = pi - 2 Si(2X) + 2 sin^2(X)/X
    pulse = _tophat(1e-9)
    width = pulse.sinc_width
    x_cut = 200.0
    body, err = quad(
        lambda w: spectral_amplitude(pulse, w) ** 2,
        CENTER - x_cut * width,
        CENTER + x_cut * width,
        limit=2000,
    )
    si, _ = sici(2 * x_cut)
    tail = (np.pi - 2 * si + 2 * np.sin(x_cut) ** 2 / x_cut) / np.pi
    assert body + tail == pytest.approx(1.0, abs=1e-6)
    # the finite body alone misses the slowly decaying tails at the 1e-3 level
    assert 1.0 - body == pytest.approx(tail, rel=1e-3)
    assert 5e-4 < tail < 5e-3


def test_gaussian_normalization():
    pulse = _gaussian(0.1e-9)
    sig = pulse.sigma_omega
    total, err = quad(
        lambda w: spectral_amplitude(pulse, w) ** 2,
        CENTER - 40 * sig,
        CENTER + 40 * sig,
        limit=500,
    )
    assert total == pytest.approx(1.0, abs=1e-9)


def test_gaussian_temporal_fwhm():
    # transform the spectral amplitude and measure the intensity FWHM in time
    tau = 0.1e-9
    pulse = _gaussian(tau)
    sig = pulse.sigma_omega
    n = 1 << 16
    omega = CENTER + np.linspace(-60 * sig, 60 * sig, n, endpoint=False)
    spacing = omega[1] - omega[0]
    amp = spectral_amplitude(pulse, omega)
    field_t = np.fft.fftshift(np.fft.fft(np.fft.ifftshift(amp)))
    t = np.fft.fftshift(np.fft.fftfreq(n, d=spacing / (2 * np.pi)))
    intensity = np.abs(field_t) ** 2
    half = intensity.max() / 2
    above = np.nonzero(intensity >= half)[0]
    lo, hi = above.min(), above.max()
    # linear interpolation of the half-maximum crossings
    dt = t[1] - t[0]
    left = t[lo] - dt * (intensity[lo] - half) / (intensity[lo] - intensity[lo - 1])
    right = t[hi] + dt * (intensity[hi] - half) / (intensity[hi] - intensity[hi + 1])
    assert right - left == pytest.approx(tau, rel=0.02)


def test_sinc_self_convolution_identity():
    # integral sinc(x-y) sinc(x-z) dx = pi sinc(y-z)
    x = np.linspace(-5000.0, 5000.0, 4_000_001)
    spacing = x[1] - x[0]

    def sinc(v):
        return np.sinc(v / np.pi)

    for y, z in [(0.0, 0.0), (0.0, 1.3), (2.0, -1.1), (0.5, 4.0)]:
        value = np.sum(sinc(x - y) * sinc(x - z)) * spacing
        assert value == pytest.approx(np.pi * sinc(y - z), abs=1e-3 * np.pi)


def test_bandwidth_delta(params):
    assert bandwidth_delta(_gaussian(0.1e-9)) == pytest.approx(1e10)
    assert bandwidth_delta(_tophat(1e-9)) == pytest.approx(2e9)
    # 0.1 ns pump sits well inside a single resonance line
    ratio = bandwidth_delta(_gaussian(0.1e-9)) / linewidth(params)
    assert ratio == pytest.approx(1 / 6, rel=0.01)
    assert bandwidth_delta(_gaussian(0.1e-9)) * dwell_time(params) < 1.0
