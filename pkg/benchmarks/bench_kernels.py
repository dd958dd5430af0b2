#!/usr/bin/env python3
"""
Benchmark the compiled quadrature kernels against the NumPy fallback.

Times the two hot loops (pump-side overlap tables and grid assembly) on
representative workloads, plus one end-to-end density grid, and prints a
speedup table.

Usage:
    python benchmarks/bench_kernels.py [--repeats 3]
"""

import argparse
import time

import numpy as np

from scissor_sfwm import (
    DispersionModel,
    PulseShape,
    PumpPulse,
    ResonanceTriplet,
    StructureParams,
    available_backends,
    beta_squared_series,
    jsd_grid,
)
from scissor_sfwm.bwf import (
    _build_inner_rule,
    _pump_kernel_args,
    default_grids,
    default_inner_rule,
)
from scissor_sfwm.kernels import get_kernels
from scissor_sfwm.structure import linewidth, resonance_lorentzian, transmission_phase


def default_runtime():
    params = StructureParams(
        ring_radius=5e-6,
        ring_spacing=15e-6,
        num_rings=1,
        self_coupling=1 - 0.0126,
        phase_index=2.5,
        group_velocity=0.75e8,
        nonlinear_gamma=200.0,
    )
    model = DispersionModel.from_structure(params, 50)
    triplet = ResonanceTriplet.adjacent(params, model)
    return params, model, triplet


def time_call(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_kernels(repeats):
    params, model, triplet = default_runtime()
    pulse = PumpPulse(PulseShape.GAUSSIAN, triplet.omega_pump, 0.1e-9)
    for n_grid, n_phases in ((257, 5), (513, 20), (1025, 40)):
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
        theta1 = transmission_phase(params, model, w1)
        theta2 = transmission_phase(params, model, w2)
        u1 = np.exp(1j * theta1)
        u2 = np.exp(1j * theta2)
        delta = linewidth(params)
        p1 = np.sqrt(w1) * resonance_lorentzian(w1 - triplet.omega_signal, delta)
        p2 = np.sqrt(w2) * resonance_lorentzian(w2 - triplet.omega_idler, delta)

        row = {}
        tables = {}
        for name in available_backends():
            mod = get_kernels(name)
            t_tables, (g_fine, _) = time_call(
                lambda m=mod: m.pump_tables(
                    s=s_values, n_phases=n_phases, **kernel_args
                ),
                repeats,
            )
            t_asm, amp = time_call(
                lambda m=mod, g=g_fine: m.assemble(g, p1, p2, u1, u2, n_phases),
                repeats,
            )
            row[name] = (t_tables, t_asm)
            tables[name] = amp
        label = f"grid {n_grid:>4} x {n_grid:<4} N={n_phases:<2} inner={inner_points}"
        for name, (t_tables, t_asm) in sorted(row.items()):
            print(
                f"{label}  {name:>8}: tables {t_tables * 1e3:8.1f} ms   "
                f"assemble {t_asm * 1e3:8.1f} ms"
            )
        if len(row) == 2:
            ft, fa = row["compiled"]
            nt, na = row["numpy"]
            mismatch = np.max(np.abs(tables["compiled"] - tables["numpy"]))
            scale = np.max(np.abs(tables["numpy"]))
            print(
                f"{label}  speedup: tables x{nt / ft:.1f} assemble x{na / fa:.1f} "
                f"(max backend deviation {mismatch / scale:.1e})"
            )


def bench_end_to_end(repeats):
    params, model, triplet = default_runtime()
    pulse = PumpPulse(PulseShape.GAUSSIAN, triplet.omega_pump, 0.1e-9)
    for name in available_backends():
        t, grid = time_call(
            lambda n=name: jsd_grid(
                params, model, triplet, pulse, 3, backend=n
            ),
            repeats,
        )
        print(
            f"jsd grid ({grid.signal_axis.n_points} pts, N=3)  {name:>8}: "
            f"{t * 1e3:8.1f} ms"
        )
    counts = list(range(1, 41))
    for name in available_backends():
        t, _ = time_call(
            lambda n=name: beta_squared_series(
                params, model, triplet, pulse, counts, backend=n
            ),
            repeats,
        )
        print(f"efficiency scan (N=1..40)  {name:>8}: {t * 1e3:8.1f} ms")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    print(f"available backends: {', '.join(available_backends())}")
    bench_kernels(args.repeats)
    bench_end_to_end(args.repeats)


if __name__ == "__main__":
    main()
