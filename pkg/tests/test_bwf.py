import numpy as np
import pytest

from scissor_sfwm import (
    FrequencyGrid,
    PhaseMatchInputs,
    QuadratureConvergenceError,
    beta_squared,
    beta_squared_series,
    big_j,
    bwf_amplitude,
    default_grids,
    default_inner_rule,
    dwell_time,
    jsd_grid,
    linewidth,
)
from scissor_sfwm.bwf import _embedded_coarse_weights, _simpson_weights


def test_grid_validation():
    FrequencyGrid(1e15, 1e11, 33)
    with pytest.raises(ValueError):
        FrequencyGrid(1e15, 1e11, 32)
    with pytest.raises(ValueError):
        FrequencyGrid(1e15, 1e11, 31)
    with pytest.raises(ValueError):
        FrequencyGrid(1e15, -1e11, 33)
    grid = FrequencyGrid(1e15, 1e11, 41)
    values = grid.values()
    assert values[20] == pytest.approx(1e15)
    assert np.allclose(np.diff(values), grid.spacing)


def test_simpson_weights_integrate_cubic():
    n, spacing = 41, 0.1
    x = spacing * np.arange(n)
    w = _simpson_weights(n, spacing)
    integral = np.dot(w, x**3)
    assert integral == pytest.approx((x[-1] ** 4) / 4, rel=1e-12)
    wc = _embedded_coarse_weights(n, spacing)
    assert np.dot(wc, x**3) == pytest.approx(integral, rel=1e-12)
    assert np.all(wc[1::2] == 0)


def test_inner_rule_has_eight_nodes_per_feature(params, gaussian_pulse):
    for tau_ns in (1.0, 0.1, 0.01):
        pulse = gaussian_pulse(tau_ns)
        n_points, half_width = default_inner_rule(params, pulse)
        spacing = 2 * half_width / (n_points - 1)
        feature = min(1 / (tau_ns * 1e-9), linewidth(params))
        assert feature / spacing >= 8


def test_default_grids_share_spacing(params, triplet, gaussian_pulse):
    signal, idler = default_grids(params, triplet, gaussian_pulse(0.1))
    assert signal.spacing == pytest.approx(idler.spacing, rel=1e-14)
    assert signal.center == triplet.omega_signal
    assert idler.center == triplet.omega_idler


def test_grid_matches_direct_amplitude(params, model, triplet, gaussian_pulse):
    # the factorized grid engine must reproduce the transparent
    # point-by-point Simpson evaluation
    pulse = gaussian_pulse(0.1)
    n_rings = 3
    grid = jsd_grid(params, model, triplet, pulse, n_rings)
    w1 = grid.signal_axis.values()
    w2 = grid.idler_axis.values()
    beta = np.sqrt(grid.beta_squared)
    diag = grid.diagnostics
    for i, j in [(128, 128), (140, 100), (35, 220)]:
        direct = bwf_amplitude(
            params,
            model,
            triplet,
            pulse,
            n_rings,
            w1[i],
            w2[j],
            inner_points=diag["inner_points"],
            inner_half_width=diag["inner_half_width"],
        )
        assert grid.amplitude[i, j] * beta == pytest.approx(direct, rel=1e-10)


def test_amplitude_exchange_symmetry(params, model, triplet, gaussian_pulse):
    pulse = gaussian_pulse(0.1)
    delta = linewidth(params)
    w1 = triplet.omega_signal + 0.7 * delta
    w2 = triplet.omega_idler - 0.31 * delta
    direct = bwf_amplitude(params, model, triplet, pulse, 3, w1, w2)
    mirrored = bwf_amplitude(
        params, model, triplet.swapped(), pulse, 3, w2, w1
    )
    assert direct == pytest.approx(mirrored, rel=1e-10)


def test_jsd_normalization(params, model, triplet, gaussian_pulse, tophat_pulse):
    for pulse in (gaussian_pulse(0.1), tophat_pulse(100 * dwell_time(params))):
        grid = jsd_grid(params, model, triplet, pulse, 2)
        total = (
            2.0
            * np.sum(np.abs(grid.amplitude) ** 2)
            * grid.signal_axis.spacing
            * grid.idler_axis.spacing
        )
        assert total == pytest.approx(1.0, abs=1e-6)


def test_long_pulse_amplitude_factorization(params, model, triplet, tophat_pulse):
    # for a pump much longer than the dwelling time the amplitude reduces to
    # the on-resonance phase matching function times the energy-mismatch sinc
    pulse = tophat_pulse(100 * dwell_time(params))
    width = pulse.sinc_width
    delta = linewidth(params)
    ratios = []
    for u_frac, eta_frac in [(0.05, 0.3), (0.2, -0.8), (0.5, 1.4), (-0.4, 2.0),
                             (0.3, -2.5), (0.5, 0.0)]:
        u = u_frac * width
        eta = eta_frac * delta
        w1 = triplet.omega_signal + (u + eta) / 2
        w2 = triplet.omega_idler + (u - eta) / 2
        amp = bwf_amplitude(params, model, triplet, pulse, 1, w1, w2)
        j_value = big_j(
            params,
            model,
            triplet,
            PhaseMatchInputs(w1, w2, triplet.omega_pump, triplet.omega_pump),
            1,
        )
        ratios.append(amp / (j_value * np.sinc(u / width / np.pi)))
    ratios = np.asarray(ratios)
    assert np.max(np.abs(ratios / np.mean(ratios) - 1)) < 0.03


def test_long_pulse_density_profile_on_ridge(params, model, triplet, tophat_pulse):
    # along w1 + w2 = 2 wP the normalized density matches the squared
    # Lorentzian pair profile of the on-resonance phase matching function
    pulse = tophat_pulse(100 * dwell_time(params))
    grid = jsd_grid(params, model, triplet, pulse, 3)
    density = grid.density()
    n = grid.signal_axis.n_points
    idx = np.arange(n // 4, 3 * n // 4)
    ridge = density[idx, idx[::-1]]  # anti-diagonal: u = 0
    w1 = grid.signal_axis.values()[idx]
    x = w1 - triplet.omega_signal
    delta = linewidth(params)
    lorentz = ((delta / 2) ** 2 / (x**2 + (delta / 2) ** 2)) ** 2
    profile = w1 * (2 * triplet.omega_pump - w1) * lorentz
    ratio = ridge / profile
    assert np.max(np.abs(ratio / ratio[len(ratio) // 2] - 1)) < 0.05


def test_beta_scales_with_photon_number(
    params, model, triplet, gaussian_pulse
):
    base = beta_squared(params, model, triplet, gaussian_pulse(0.1), 1)
    double = beta_squared(
        params, model, triplet, gaussian_pulse(0.1, photon_number=2.0), 1
    )
    assert double == pytest.approx(4 * base, rel=1e-12)


def test_two_rings_quadruple_one(params, model, triplet, gaussian_pulse):
    # fully coherent regime: efficiency grows as the ring count squared
    betas = beta_squared_series(params, model, triplet, gaussian_pulse(1.0), [1, 2])
    assert betas[1] / betas[0] == pytest.approx(4.0, rel=0.02)


def test_doubling_duration_halves_long_pulse_beta(
    params, model, triplet, tophat_pulse
):
    duration = 100 * dwell_time(params)
    b1 = beta_squared(params, model, triplet, tophat_pulse(duration), 1)
    b2 = beta_squared(params, model, triplet, tophat_pulse(2 * duration), 1)
    assert b1 / b2 == pytest.approx(2.0, rel=0.03)


def test_beta_grid_refinement_invariance(params, model, triplet, gaussian_pulse):
    pulse = gaussian_pulse(0.1)
    coarse = beta_squared(params, model, triplet, pulse, 2)
    fine = beta_squared(params, model, triplet, pulse, 2, grid_points=513)
    assert fine == pytest.approx(coarse, rel=0.01)


def test_amplitude_outside_pump_support(params, model, triplet, gaussian_pulse):
    # energy sum far outside the pump spectrum: amplitude at the numerical floor
    pulse = gaussian_pulse(1.0)
    delta = linewidth(params)
    w1 = triplet.omega_signal + 4.0 * delta
    w2 = triplet.omega_idler + 4.0 * delta
    on_ridge = bwf_amplitude(
        params, model, triplet, pulse, 1, w1, 2 * triplet.omega_pump - w1
    )
    off = bwf_amplitude(params, model, triplet, pulse, 1, w1, w2, check=False)
    assert abs(off) < 1e-12 * abs(on_ridge)


def test_series_matches_individual_calls(params, model, triplet, gaussian_pulse):
    pulse = gaussian_pulse(0.1)
    series = beta_squared_series(params, model, triplet, pulse, [1, 3], grid_points=257)
    for n_rings, value in zip([1, 3], series):
        single = beta_squared(
            params, model, triplet, pulse, n_rings, grid_points=257,
            inner_points=default_inner_rule(params, pulse, n_rings=3)[0],
        )
        assert single == pytest.approx(value, rel=1e-12)


def test_convergence_error_on_coarse_grid(params, model, triplet, gaussian_pulse):
    with pytest.raises(QuadratureConvergenceError):
        beta_squared(
            params, model, triplet, gaussian_pulse(1.0), 1, grid_points=33
        )


def test_mismatched_grids_rejected(params, model, triplet, gaussian_pulse):
    signal = FrequencyGrid(triplet.omega_signal, 5 * linewidth(params), 257)
    idler = FrequencyGrid(triplet.omega_idler, 4 * linewidth(params), 257)
    with pytest.raises(ValueError):
        beta_squared(
            params, model, triplet, gaussian_pulse(0.1), 1, signal, idler
        )


def test_inputs_helpers(triplet):
    inputs = PhaseMatchInputs.energy_conserving(
        triplet.omega_signal + 1e9, triplet.omega_idler - 3e9, triplet.omega_pump
    )
    assert inputs.omega4 == pytest.approx(
        inputs.omega1 + inputs.omega2 - inputs.omega3
    )
    assert inputs.detuning_sum(triplet) == pytest.approx(-2e9, rel=1e-6)
    assert inputs.detuning_difference(triplet) == pytest.approx(4e9, rel=1e-6)
