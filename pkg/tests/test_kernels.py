import numpy as np
import pytest

from scissor_sfwm import available_backends, beta_squared, jsd_grid
from scissor_sfwm.bwf import (
    _build_inner_rule,
    _pump_kernel_args,
    default_grids,
    default_inner_rule,
)
from scissor_sfwm.kernels import get_kernels
from scissor_sfwm.structure import linewidth, resonance_lorentzian, transmission_phase

needs_compiled = pytest.mark.skipif(
    "compiled" not in available_backends(),
    reason="compiled kernels not built",
)


def _kernel_workload(params, model, triplet, pulse, n_grid=257, n_phases=4):
    signal, idler = default_grids(
        params, triplet, pulse, n_points=n_grid, n_rings=n_phases
    )
    inner_points, inner_half_width = default_inner_rule(
        params, pulse, n_rings=n_phases
    )
    rule = _build_inner_rule(
        params, model, triplet, pulse, inner_points, inner_half_width
    )
    kernel_args = _pump_kernel_args(params, model, triplet, pulse, rule)
    w1 = signal.values()
    w2 = idler.values()
    s_values = np.ascontiguousarray(
        w1[0] + w2[0] + signal.spacing * np.arange(2 * n_grid - 1)
    )
    delta = linewidth(params)
    p1 = np.sqrt(w1) * resonance_lorentzian(w1 - triplet.omega_signal, delta)
    p2 = np.sqrt(w2) * resonance_lorentzian(w2 - triplet.omega_idler, delta)
    u1 = np.exp(1j * transmission_phase(params, model, w1))
    u2 = np.exp(1j * transmission_phase(params, model, w2))
    return s_values, kernel_args, p1, p2, u1, u2


@needs_compiled
def test_backends_agree_on_tables(params, model, triplet, gaussian_pulse):
    s, args, *_ = _kernel_workload(params, model, triplet, gaussian_pulse(0.1))
    fine_c, coarse_c = get_kernels("compiled").pump_tables(
        s=s, n_phases=4, **args
    )
    fine_n, coarse_n = get_kernels("numpy").pump_tables(s=s, n_phases=4, **args)
    scale = np.max(np.abs(fine_n))
    assert np.max(np.abs(fine_c - fine_n)) < 1e-12 * scale
    assert np.max(np.abs(coarse_c - coarse_n)) < 1e-12 * scale


@needs_compiled
def test_backends_agree_on_assembly(params, model, triplet, gaussian_pulse):
    s, args, p1, p2, u1, u2 = _kernel_workload(
        params, model, triplet, gaussian_pulse(0.1)
    )
    fine, _ = get_kernels("numpy").pump_tables(s=s, n_phases=4, **args)
    amp_c = get_kernels("compiled").assemble(fine, p1, p2, u1, u2, 4)
    amp_n = get_kernels("numpy").assemble(fine, p1, p2, u1, u2, 4)
    assert np.max(np.abs(amp_c - amp_n)) < 1e-12 * np.max(np.abs(amp_n))


@needs_compiled
def test_beta_squared_backend_parity(params, model, triplet, gaussian_pulse):
    pulse = gaussian_pulse(0.1)
    compiled = beta_squared(params, model, triplet, pulse, 3, backend="compiled")
    numpy_val = beta_squared(params, model, triplet, pulse, 3, backend="numpy")
    assert compiled == pytest.approx(numpy_val, rel=1e-12)


def test_unknown_backend_rejected(params, model, triplet, gaussian_pulse):
    with pytest.raises(ValueError):
        beta_squared(
            params, model, triplet, gaussian_pulse(0.1), 1, backend="fortran"
        )


def test_threaded_evaluation_deterministic(params, model, triplet, gaussian_pulse):
    pulse = gaussian_pulse(0.1)
    single = jsd_grid(params, model, triplet, pulse, 3, threads=1)
    threaded = jsd_grid(params, model, triplet, pulse, 3, threads=4)
    assert np.array_equal(single.amplitude, threaded.amplitude)
    assert single.beta_squared == threaded.beta_squared
