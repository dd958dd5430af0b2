import numpy as np
import pytest

from scissor_sfwm import (
    PhaseMatchInputs,
    RingLoading,
    beta_squared,
    dicke_rate_factor,
    dwell_time,
    fgr_rate,
    long_pulse_rate,
    long_pulse_rate_closed_form,
    mu,
    pair_rate_from_energy_density,
)
from scissor_sfwm.constants import HBAR
from scissor_sfwm.limits import signal_window


def test_closed_form_value(params, triplet):
    # N = 1, 1 ns rectangular pulse with the default silicon parameters
    value = long_pulse_rate_closed_form(params, triplet, 1, 1e-9)
    assert value == pytest.approx(3.0e-15, rel=0.02)


def test_closed_form_matches_quadrature(params, model, triplet):
    for n_rings in (1, 4):
        for duration in (1e-9, 5e-9):
            quad = long_pulse_rate(params, model, triplet, n_rings, duration)
            closed = long_pulse_rate_closed_form(params, triplet, n_rings, duration)
            assert quad == pytest.approx(closed, rel=0.02)


def test_rate_scalings(params, model, triplet):
    base = long_pulse_rate(params, model, triplet, 1, 1e-9)
    assert long_pulse_rate(params, model, triplet, 2, 1e-9) == pytest.approx(
        4 * base, rel=1e-12
    )
    assert long_pulse_rate(params, model, triplet, 1, 2e-9) == pytest.approx(
        base / 2, rel=1e-12
    )


def test_short_duration_warns(params, model, triplet):
    with pytest.warns(UserWarning):
        long_pulse_rate(params, model, triplet, 1, dwell_time(params))


def test_energy_density_rate(params, model, triplet):
    duration = 1e-9
    photon_number = 3.0
    density = HBAR * triplet.omega_pump * photon_number / (
        params.group_velocity * duration
    )
    rate = pair_rate_from_energy_density(params, model, triplet, 2, density)
    per_pulse = long_pulse_rate(params, model, triplet, 2, duration)
    assert rate * duration == pytest.approx(per_pulse * photon_number**2, rel=1e-12)


def test_coherent_loading_magnitudes(params, model, triplet):
    loading = RingLoading.from_pulse(params, model, triplet, 6, 1e-9)
    mags = np.abs(np.asarray(loading.amplitudes))
    assert np.max(np.abs(mags / mags[0] - 1)) < 1e-12


def test_fgr_equals_long_pulse(params, model, triplet):
    for n_rings in (1, 2, 5, 10):
        duration = 1e-9
        loading = RingLoading.from_pulse(params, model, triplet, n_rings, duration)
        rate = fgr_rate(params, model, triplet, loading)
        per_pulse = long_pulse_rate(params, model, triplet, n_rings, duration)
        assert rate * duration == pytest.approx(per_pulse, rel=1e-10)


def test_scrambled_loading_reduces_rate(params, model, triplet, rng):
    duration = 1e-9
    for n_rings in (2, 5, 10):
        loading = RingLoading.from_pulse(params, model, triplet, n_rings, duration)
        coherent = fgr_rate(params, model, triplet, loading)
        for _ in range(3):
            scrambled = fgr_rate(params, model, triplet, loading.scrambled(rng))
            assert scrambled < coherent
    # a single ring has no relative phases to scramble
    loading = RingLoading.from_pulse(params, model, triplet, 1, duration)
    assert fgr_rate(
        params, model, triplet, loading.scrambled(rng)
    ) == pytest.approx(fgr_rate(params, model, triplet, loading), rel=1e-12)


def test_coherent_loading_is_optimal(params, model, triplet):
    # the pulse-produced phases align every ring contribution: the coherent
    # sum has the same magnitude as the sum of magnitudes
    from scissor_sfwm.limits import _per_ring_coupling

    n_rings = 7
    loading = RingLoading.from_pulse(params, model, triplet, n_rings, 1e-9)
    omega, _ = signal_window(params, triplet, n_points=129)
    couplings = _per_ring_coupling(params, model, triplet, omega, n_rings)
    alpha_sq = np.asarray([a * a for a in loading.amplitudes])
    coherent = np.abs(alpha_sq @ couplings)
    bound = np.abs(alpha_sq)[:, None] * np.abs(couplings)
    assert np.allclose(coherent, bound.sum(axis=0), rtol=1e-9)


def test_mu_vanishes_across_signal_window(params, model, triplet):
    omega, _ = signal_window(params, triplet, n_points=257)
    inputs = PhaseMatchInputs(
        omega, 2 * triplet.omega_pump - omega, triplet.omega_pump,
        triplet.omega_pump,
    )
    assert np.max(np.abs(mu(params, model, inputs))) < 1e-9


def test_long_pulse_limit_of_full_engine(
    params, model, triplet, tophat_pulse
):
    # the general engine converges onto the analytic long-pulse rate as the
    # pulse grows; the residual scales like the bandwidth-to-linewidth ratio
    errors = []
    for mult in (50, 100, 500):
        duration = mult * dwell_time(params)
        full = beta_squared(params, model, triplet, tophat_pulse(duration), 3)
        limit = long_pulse_rate(params, model, triplet, 3, duration)
        errors.append(abs(full - limit) / limit)
    assert errors[0] > errors[1] > errors[2]
    assert errors[2] < 0.05
    assert errors[1] < 4 * 2.0 / 100  # about 4/(duration * linewidth)


def test_dicke_rate_factor():
    n = 8
    assert dicke_rate_factor(n / 2, n / 2) == pytest.approx(n)
    assert dicke_rate_factor(n / 2, 0) == pytest.approx((n / 2) * (n / 2 + 1))
    assert dicke_rate_factor(n / 2, -n / 2) == 0.0
    assert dicke_rate_factor(2.5, 0.5) == pytest.approx(3.0 * 3.0)
    with pytest.raises(ValueError):
        dicke_rate_factor(1.0, 1.5)
    # half the emitters excited maximizes the rate
    values = [dicke_rate_factor(n / 2, m) for m in range(-n // 2, n // 2 + 1)]
    assert max(values) == pytest.approx(dicke_rate_factor(n / 2, 0))


def test_gaussian_long_pulse_effective_duration(
    params, model, triplet, gaussian_pulse
):
    # a Gaussian pump in the long-pulse regime behaves like a rectangular
    # pulse of effective length sqrt(pi)/sigma_w: the spectral-amplitude
    # autoconvolution is exp(-u^2/(8 sigma^2)), whose squared integral
    # (2 sqrt(pi) sigma) replaces the top-hat value 2 pi / duration
    errors = []
    for tau_ns in (0.5, 1.0):
        pulse = gaussian_pulse(tau_ns)
        effective = np.sqrt(np.pi) / pulse.sigma_omega
        engine = beta_squared(params, model, triplet, pulse, 3)
        predicted = long_pulse_rate(params, model, triplet, 3, effective)
        errors.append(abs(engine - predicted) / predicted)
    assert errors[0] < 0.04
    assert errors[1] < 0.015
    assert errors[1] < errors[0]
