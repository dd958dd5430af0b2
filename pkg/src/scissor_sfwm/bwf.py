"""
Pair-amplitude engine: two-photon spectral amplitude, pair probability, and
normalized joint spectral density on rectangular frequency grids.

The unnormalized amplitude for a signal photon at w1 and an idler photon at
w2 (one quadrant of the symmetric two-photon wave function) is

    A(w1, w2) = i * (3 pi sqrt(2) |alpha|^2 hbar / (4 eps0))
                * sqrt(w1 w2)/v_g
                * integral dw  sqrt(w (w1+w2-w))/v_g
                  * phi_P(w) phi_P(w1+w2-w) * J(w1, w2, w, w1+w2-w),

    |beta|^2 = 2 * sum |A|^2 h1 h2,     phi = A / beta,

where J is the N-ring phase matching function, phi_P the pump spectral
amplitude, and the factor 2 accounts for the mirrored (w1 <-> w2) quadrant.
The inner integral uses composite Simpson weights; an embedded half-node
rule and a half-resolution grid sum provide convergence estimates.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from ._kernels_np import PUMP_GAUSSIAN, PUMP_TOP_HAT
from .constants import HBAR, VACUUM_PERMITTIVITY
from .phasematch import PhaseMatchInputs, RingKernelConstant, big_j
from .pump import PulseShape, PumpPulse, bandwidth_delta, spectral_amplitude
from .structure import (
    DispersionModel,
    ResonanceTriplet,
    StructureParams,
    linewidth,
    resonance_lorentzian,
    transmission_phase,
)

GRID_LADDER = (257, 513, 1025, 2049, 4097)
INNER_TOLERANCE = 1e-4  # relative inner-quadrature refinement disagreement
OUTER_TOLERANCE = 1e-2  # relative grid-refinement change of |beta|^2


class QuadratureConvergenceError(RuntimeError):
    """A refinement estimate exceeded its tolerance."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


@dataclass(frozen=True)
class FrequencyGrid:
    """
    Uniform frequency axis with the center on a node.

    Parameters
    ----------
    center : float
        Center angular frequency [rad/s].
    half_width : float
        Half span of the axis [rad/s].
    n_points : int
        Number of nodes; odd and >= 33.
    """

    center: float
    half_width: float
    n_points: int

    def __post_init__(self) -> None:
        if self.center <= 0 or self.half_width <= 0:
            raise ValueError("center and half_width must be positive")
        if self.n_points < 33 or self.n_points % 2 == 0:
            raise ValueError(
                f"n_points must be an odd integer >= 33, got {self.n_points}"
            )

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / (self.n_points - 1)

    def values(self) -> np.ndarray:
        return np.linspace(
            self.center - self.half_width,
            self.center + self.half_width,
            self.n_points,
        )


@dataclass
class BwfGrid:
    """
    Normalized two-photon amplitude on a signal x idler quadrant.

    ``amplitude`` holds phi(w1, w2) [s] for w1 on the signal axis and w2 on
    the idler axis; the mirrored quadrant is implicit by symmetry, so the
    normalization reads 2 * sum |phi|^2 h1 h2 = 1. ``beta_squared`` is the
    pair probability per pulse for the pulse's photon number.
    """

    signal_axis: FrequencyGrid
    idler_axis: FrequencyGrid
    amplitude: np.ndarray
    beta_squared: float
    params: StructureParams
    pulse: PumpPulse
    n_rings: int
    diagnostics: dict = field(default_factory=dict)

    def density(self) -> np.ndarray:
        """Joint spectral density |phi|^2 [s^2]."""
        return np.abs(self.amplitude) ** 2

    def signal_detunings(self) -> np.ndarray:
        """(w1 - w_S)/Delta, the signal axis in linewidth units."""
        delta = linewidth(self.params)
        return (self.signal_axis.values() - self.signal_axis.center) / delta

    def idler_detunings(self) -> np.ndarray:
        """(w2 - w_I)/Delta, the idler axis in linewidth units."""
        delta = linewidth(self.params)
        return (self.idler_axis.values() - self.idler_axis.center) / delta


def _ladder_points(n_required: int) -> int:
    for n in GRID_LADDER:
        if n >= n_required:
            return n
    warnings.warn(
        f"required grid of {n_required} points exceeds the ladder; "
        f"capping at {GRID_LADDER[-1]}",
        UserWarning,
        stacklevel=2,
    )
    return GRID_LADDER[-1]


def _pump_lattice_scale(pulse: PumpPulse) -> float:
    # finest frequency feature of |phi_P * phi_P|^2 along the diagonal sum
    if pulse.shape is PulseShape.GAUSSIAN:
        return 0.7 * pulse.sigma_omega
    return np.pi * pulse.sinc_width / 3.0


def default_grid_points(
    params: StructureParams,
    pulse: PumpPulse,
    half_width: float,
    n_rings: int = 1,
) -> int:
    """
    Grid size resolving the resonance linewidth, the pump spectral feature,
    and the first interference lobe of the N-ring envelope.
    """
    delta = linewidth(params)
    h_max = min(
        delta / 25.0,
        _pump_lattice_scale(pulse),
        np.pi * delta / (3.0 * max(n_rings, 1)),
    )
    return _ladder_points(int(np.ceil(2.0 * half_width / h_max)) + 1)


def default_grids(
    params: StructureParams,
    triplet: ResonanceTriplet,
    pulse: PumpPulse,
    *,
    include_pump_span: bool = False,
    n_points: int | None = None,
    half_width: float | None = None,
    n_rings: int = 1,
) -> tuple[FrequencyGrid, FrequencyGrid]:
    """
    Signal and idler grids centered on their resonances.

    The default span is 5 linewidths; with ``include_pump_span`` it grows to
    cover 5 pump bandwidths as well (needed for converged pair probabilities
    with spectrally broad pumps).
    """
    delta = linewidth(params)
    if half_width is None:
        half_width = 5.0 * delta
        if include_pump_span:
            half_width = max(half_width, 5.0 * bandwidth_delta(pulse))
    if n_points is None:
        n_points = default_grid_points(params, pulse, half_width, n_rings)
    signal = FrequencyGrid(triplet.omega_signal, half_width, n_points)
    idler = FrequencyGrid(triplet.omega_idler, half_width, n_points)
    return signal, idler


def default_inner_rule(
    params: StructureParams,
    pulse: PumpPulse,
    *,
    n_points: int | None = None,
    half_width: float | None = None,
    n_rings: int = 1,
) -> tuple[int, float]:
    """
    Node count and half width of the pump-side integral.

    Span: 10 pump bandwidths (enough for the Gaussian and the slowly
    decaying sinc alike), wide enough to cover the resonance linewidth.
    Resolution: at least 8 nodes per min(pump bandwidth, linewidth), with a
    1025-node floor; the ring-to-ring phase factors oscillate up to
    (n_rings - 1) times faster than the transmission phase, so the spacing
    also shrinks with the ring count.
    """
    delta = linewidth(params)
    pump_delta = bandwidth_delta(pulse)
    if half_width is None:
        half_width = max(10.0 * pump_delta, delta)
    if n_points is None:
        h_max = min(
            min(pump_delta, delta) / 8.0,
            delta / (3.0 * max(n_rings - 1, 1)),
        )
        n_points = max(1025, int(np.ceil(2.0 * half_width / h_max)) + 1)
        n_points = 4 * ((n_points - 1 + 3) // 4) + 1  # round up to 1 mod 4
    if n_points % 4 != 1:
        raise ValueError("inner node count must be 1 mod 4 (embedded coarse rule)")
    return n_points, half_width


def _simpson_weights(n_points: int, spacing: float) -> np.ndarray:
    if n_points % 2 == 0 or n_points < 3:
        raise ValueError("composite Simpson needs an odd node count >= 3")
    w = np.ones(n_points)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (spacing / 3.0)


def _embedded_coarse_weights(n_points: int, spacing: float) -> np.ndarray:
    # Simpson rule on every other node, written on the fine node set
    if n_points % 4 != 1:
        raise ValueError("embedded coarse rule needs n_points = 1 mod 4")
    w = np.zeros(n_points)
    w[0::2] = _simpson_weights((n_points + 1) // 2, 2.0 * spacing)
    return w


@dataclass(frozen=True)
class _InnerRule:
    omega3: np.ndarray
    w_fine: np.ndarray
    w_coarse: np.ndarray
    phi3: np.ndarray
    exp_theta3: np.ndarray
    lorentz3: np.ndarray


def _build_inner_rule(
    params: StructureParams,
    model: DispersionModel,
    triplet: ResonanceTriplet,
    pulse: PumpPulse,
    n_points: int,
    half_width: float,
) -> _InnerRule:
    omega3 = np.linspace(
        triplet.omega_pump - half_width, triplet.omega_pump + half_width, n_points
    )
    spacing = omega3[1] - omega3[0]
    return _InnerRule(
        omega3=omega3,
        w_fine=_simpson_weights(n_points, spacing),
        w_coarse=_embedded_coarse_weights(n_points, spacing),
        phi3=np.asarray(spectral_amplitude(pulse, omega3), dtype=float),
        exp_theta3=np.exp(
            1j * np.asarray(transmission_phase(params, model, omega3))
        ),
        lorentz3=resonance_lorentzian(
            omega3 - triplet.omega_pump, linewidth(params)
        ),
    )


def _pump_kernel_args(
    params: StructureParams,
    model: DispersionModel,
    triplet: ResonanceTriplet,
    pulse: PumpPulse,
    rule: _InnerRule,
) -> dict:
    if pulse.shape is PulseShape.TOP_HAT_SINC:
        kind = PUMP_TOP_HAT
        width = pulse.sinc_width
        amp = 1.0 / np.sqrt(np.pi * width)
    else:
        kind = PUMP_GAUSSIAN
        width = pulse.sigma_omega
        amp = (2 * np.pi * width**2) ** (-0.25)
    return dict(
        omega3=rule.omega3,
        w_fine=rule.w_fine,
        w_coarse=rule.w_coarse,
        phi3=rule.phi3,
        exp_theta3=rule.exp_theta3,
        lorentz3=rule.lorentz3,
        pump_kind=kind,
        pump_center=pulse.center,
        pump_width=width,
        pump_amp=amp,
        sigma=params.self_coupling,
        delta=linewidth(params),
        k0l=model.reference_wavenumber * model.circumference,
        omega_ref=model.reference_frequency,
        l_over_vg=model.circumference / model.group_velocity,
        inv_vg=1.0 / params.group_velocity,
    )


def _front_factor(params: StructureParams, triplet: ResonanceTriplet, pulse: PumpPulse):
    # i * 3 pi sqrt(2) |alpha|^2 hbar / (4 eps0) * (1/v_g) * (2/(1-sigma))^2 K
    const = RingKernelConstant.from_structure(params, triplet.omega_pump)
    scale = (2.0 / (1.0 - params.self_coupling)) ** 2 * const.overlap
    return (
        1j
        * 3.0
        * np.pi
        * np.sqrt(2.0)
        * pulse.photon_number
        * HBAR
        / (4.0 * VACUUM_PERMITTIVITY)
        * scale
        / params.group_velocity
    )


def _pump_tables_threaded(kernel_module, s_values, kernel_args, n_phases, threads):
    if threads <= 1 or s_values.size < 64:
        return kernel_module.pump_tables(
            s=s_values, n_phases=n_phases, **kernel_args
        )
    chunks = np.array_split(np.arange(s_values.size), threads)
    g_fine = np.empty((s_values.size, n_phases), dtype=np.complex128)
    g_coarse = np.empty_like(g_fine)

    def run(idx):
        return kernel_module.pump_tables(
            s=np.ascontiguousarray(s_values[idx]), n_phases=n_phases, **kernel_args
        )

    with ThreadPoolExecutor(max_workers=threads) as pool:
        for idx, (gf, gc) in zip(chunks, pool.map(run, chunks)):
            g_fine[idx] = gf
            g_coarse[idx] = gc
    return g_fine, g_coarse


@dataclass
class _AmplitudeResult:
    signal_axis: FrequencyGrid
    idler_axis: FrequencyGrid
    amplitude: np.ndarray
    beta_squared: float
    diagnostics: dict


def _quadrant_sum(amplitude: np.ndarray, h1: float, h2: float) -> float:
    return 2.0 * float(np.sum(np.abs(amplitude) ** 2)) * h1 * h2


def _compute_amplitude_grid(
    params: StructureParams,
    model: DispersionModel,
    triplet: ResonanceTriplet,
    pulse: PumpPulse,
    n_rings_list: list[int],
    signal_grid: FrequencyGrid,
    idler_grid: FrequencyGrid,
    inner_points: int,
    inner_half_width: float,
    backend: str | None,
    threads: int,
    check: bool,
) -> list[_AmplitudeResult]:
    if not np.isclose(signal_grid.spacing, idler_grid.spacing, rtol=1e-12):
        raise ValueError("signal and idler grids must share the same spacing")
    kernel_module = kernels.get_kernels(backend)
    rule = _build_inner_rule(
        params, model, triplet, pulse, inner_points, inner_half_width
    )
    kernel_args = _pump_kernel_args(params, model, triplet, pulse, rule)

    w1 = signal_grid.values()
    w2 = idler_grid.values()
    s_values = np.ascontiguousarray(w1[0] + w2[0] + signal_grid.spacing * np.arange(
        w1.size + w2.size - 1
    ))
    n_phases = max(n_rings_list)
    g_fine, g_coarse = _pump_tables_threaded(
        kernel_module, s_values, kernel_args, n_phases, threads
    )

    theta1 = transmission_phase(params, model, w1)
    theta2 = transmission_phase(params, model, w2)
    u1 = np.exp(1j * theta1)
    u2 = np.exp(1j * theta2)
    delta = linewidth(params)
    p1 = np.sqrt(w1) * resonance_lorentzian(w1 - triplet.omega_signal, delta)
    p2 = np.sqrt(w2) * resonance_lorentzian(w2 - triplet.omega_idler, delta)
    front = _front_factor(params, triplet, pulse)
    h1 = signal_grid.spacing
    h2 = idler_grid.spacing

    results = []
    for n_rings in n_rings_list:
        amp_fine = front * kernel_module.assemble(g_fine, p1, p2, u1, u2, n_rings)
        amp_coarse = front * kernel_module.assemble(
            g_coarse, p1, p2, u1, u2, n_rings
        )
        norm_fine = float(np.linalg.norm(amp_fine))
        inner_rel = (
            float(np.linalg.norm(amp_fine - amp_coarse)) / norm_fine
            if norm_fine > 0
            else 0.0
        )
        beta_sq = _quadrant_sum(amp_fine, h1, h2)
        beta_sq_half = _quadrant_sum(amp_fine[::2, ::2], 2 * h1, 2 * h2)
        outer_rel = abs(beta_sq - beta_sq_half) / beta_sq if beta_sq > 0 else 0.0
        diagnostics = {
            "backend": kernel_module.__name__.rsplit(".", 1)[-1].lstrip("_"),
            "grid_points": signal_grid.n_points,
            "grid_half_width": signal_grid.half_width,
            "inner_points": inner_points,
            "inner_half_width": inner_half_width,
            "inner_refinement_rel": inner_rel,
            "outer_refinement_rel": outer_rel,
        }
        if check and inner_rel > INNER_TOLERANCE:
            raise QuadratureConvergenceError(
                f"pump integral not converged: refinement changed the "
                f"amplitude by {inner_rel:.2e} (> {INNER_TOLERANCE:.0e}); "
                "increase inner_points",
                diagnostics,
            )
        if check and outer_rel > OUTER_TOLERANCE:
            raise QuadratureConvergenceError(
                f"frequency grid too coarse: halving the resolution changed "
                f"|beta|^2 by {outer_rel:.2e} (> {OUTER_TOLERANCE:.0e}); "
                "increase grid points",
                diagnostics,
            )
        results.append(
            _AmplitudeResult(
                signal_axis=signal_grid,
                idler_axis=idler_grid,
                amplitude=amp_fine,
                beta_squared=beta_sq,
                diagnostics=diagnostics,
            )
        )
    return results


def _resolve_grids(
    params,
    triplet,
    pulse,
    n_rings_max,
    signal_grid,
    idler_grid,
    grid_points,
    half_width,
    include_pump_span,
):
    if (signal_grid is None) != (idler_grid is None):
        raise ValueError("provide both signal_grid and idler_grid or neither")
    if signal_grid is None:
        signal_grid, idler_grid = default_grids(
            params,
            triplet,
            pulse,
            include_pump_span=include_pump_span,
            n_points=grid_points,
            half_width=half_width,
            n_rings=n_rings_max,
        )
    return signal_grid, idler_grid


def bwf_amplitude(
    params: StructureParams,
    model: DispersionModel,
    triplet: ResonanceTriplet,
    pulse: PumpPulse,
    n_rings: int,
    omega1: float,
    omega2: float,
    *,
    inner_points: int | None = None,
    inner_half_width: float | None = None,
    check: bool = True,
) -> complex:
    """
    Unnormalized pair amplitude A(w1, w2) [s] at a single grid-free point.

    Direct Simpson evaluation of the pump-frequency integral through the
    full phase-matching function; this is the transparent reference path for
    the factorized grid kernels. With ``check`` the embedded half-node rule
    must agree to 1e-4 in relative terms wherever the amplitude is not
    deeply suppressed.
    """
    inner_points, inner_half_width = default_inner_rule(
        params, pulse, n_points=inner_points, half_width=inner_half_width,
        n_rings=n_rings,
    )
    rule = _build_inner_rule(
        params, model, triplet, pulse, inner_points, inner_half_width
    )
    omega4 = omega1 + omega2 - rule.omega3
    valid = omega4 > 0
    j_values = np.zeros_like(rule.omega3, dtype=complex)
    if np.any(valid):
        inputs = PhaseMatchInputs(
            omega1, omega2, rule.omega3[valid], omega4[valid]
        )
        j_values[valid] = big_j(params, model, triplet, inputs, n_rings)
    phi4 = np.zeros_like(rule.omega3)
    phi4[valid] = spectral_amplitude(pulse, omega4[valid])
    integrand = (
        np.sqrt(np.maximum(omega4, 0.0) * rule.omega3)
        / params.group_velocity
        * rule.phi3
        * phi4
        * j_values
    )
    inner_fine = complex(np.dot(rule.w_fine, integrand))
    inner_coarse = complex(np.dot(rule.w_coarse, integrand))
    prefactor = (
        1j
        * 3.0
        * np.pi
        * np.sqrt(2.0)
        * pulse.photon_number
        * HBAR
        / (4.0 * VACUUM_PERMITTIVITY)
        * np.sqrt(omega1 * omega2)
        / params.group_velocity
    )
    amp = prefactor * inner_fine
    if check:
        scale = abs(prefactor) * float(np.dot(rule.w_fine, np.abs(integrand)))
        err = abs(prefactor) * abs(inner_fine - inner_coarse)
        if err > INNER_TOLERANCE * max(abs(amp), 1e-3 * scale):
            raise QuadratureConvergenceError(
                "pump integral not converged at "
                f"(omega1={omega1:.6e}, omega2={omega2:.6e}): refinement "
                f"changed the amplitude by {err:.2e}",
                {"amplitude": amp, "refinement_abs": err, "scale": scale},
            )
    return amp


def beta_squared(
    params: StructureParams,
    model: DispersionModel,
    triplet: ResonanceTriplet,
    pulse: PumpPulse,
    n_rings: int,
    signal_grid: FrequencyGrid | None = None,
    idler_grid: FrequencyGrid | None = None,
    *,
    grid_points: int | None = None,
    half_width: float | None = None,
    inner_points: int | None = None,
    inner_half_width: float | None = None,
    backend: str | None = None,
    threads: int = 1,
    check: bool = True,
) -> float:
    """
    Pair-generation probability |beta|^2 per pulse.

    Scales as photon_number**2 (i.e. |alpha|^4); divide by
    ``pulse.photon_number**2`` for the generation efficiency.
    """
    return beta_squared_series(
        params,
        model,
        triplet,
        pulse,
        [n_rings],
        signal_grid=signal_grid,
        idler_grid=idler_grid,
        grid_points=grid_points,
        half_width=half_width,
        inner_points=inner_points,
        inner_half_width=inner_half_width,
        backend=backend,
        threads=threads,
        check=check,
    )[0]


def beta_squared_series(
    params: StructureParams,
    model: DispersionModel,
    triplet: ResonanceTriplet,
    pulse: PumpPulse,
    n_rings_values,
    signal_grid: FrequencyGrid | None = None,
    idler_grid: FrequencyGrid | None = None,
    *,
    grid_points: int | None = None,
    half_width: float | None = None,
    inner_points: int | None = None,
    inner_half_width: float | None = None,
    backend: str | None = None,
    threads: int = 1,
    check: bool = True,
    diagnostics_out: list | None = None,
) -> list[float]:
    """
    |beta|^2 for several ring counts over a shared pump table.

    The pump-side integrals are independent of the ring count, so a scan
    over N reuses them; this is much cheaper than separate calls. When a
    list is passed as ``diagnostics_out`` the per-count convergence
    diagnostics are appended to it.
    """
    n_rings_values = [int(n) for n in n_rings_values]
    if not n_rings_values or any(n < 1 for n in n_rings_values):
        raise ValueError("n_rings_values must be a non-empty list of ints >= 1")
    signal_grid, idler_grid = _resolve_grids(
        params,
        triplet,
        pulse,
        max(n_rings_values),
        signal_grid,
        idler_grid,
        grid_points,
        half_width,
        include_pump_span=True,
    )
    inner_points, inner_half_width = default_inner_rule(
        params, pulse, n_points=inner_points, half_width=inner_half_width,
        n_rings=max(n_rings_values),
    )
    results = _compute_amplitude_grid(
        params,
        model,
        triplet,
        pulse,
        n_rings_values,
        signal_grid,
        idler_grid,
        inner_points,
        inner_half_width,
        backend,
        threads,
        check,
    )
    if diagnostics_out is not None:
        diagnostics_out.extend(r.diagnostics for r in results)
    return [r.beta_squared for r in results]


def jsd_grid(
    params: StructureParams,
    model: DispersionModel,
    triplet: ResonanceTriplet,
    pulse: PumpPulse,
    n_rings: int,
    signal_grid: FrequencyGrid | None = None,
    idler_grid: FrequencyGrid | None = None,
    *,
    grid_points: int | None = None,
    half_width: float | None = None,
    inner_points: int | None = None,
    inner_half_width: float | None = None,
    backend: str | None = None,
    threads: int = 1,
    check: bool = True,
) -> BwfGrid:
    """
    Normalized two-photon amplitude and joint spectral density on a grid.

    The grid spans the signal/idler resonances (default: 5 linewidths);
    axes are exposed in linewidth-normalized detunings for reporting.
    """
    signal_grid, idler_grid = _resolve_grids(
        params,
        triplet,
        pulse,
        n_rings,
        signal_grid,
        idler_grid,
        grid_points,
        half_width,
        include_pump_span=False,
    )
    inner_points, inner_half_width = default_inner_rule(
        params, pulse, n_points=inner_points, half_width=inner_half_width,
        n_rings=n_rings,
    )
    result = _compute_amplitude_grid(
        params,
        model,
        triplet,
        pulse,
        [n_rings],
        signal_grid,
        idler_grid,
        inner_points,
        inner_half_width,
        backend,
        threads,
        check,
    )[0]
    if result.beta_squared <= 0:
        raise ValueError("amplitude vanishes on the grid; cannot normalize")
    normalized = result.amplitude / np.sqrt(result.beta_squared)
    return BwfGrid(
        signal_axis=result.signal_axis,
        idler_axis=result.idler_axis,
        amplitude=normalized,
        beta_squared=result.beta_squared,
        params=params,
        pulse=pulse,
        n_rings=n_rings,
        diagnostics=result.diagnostics,
    )
