"""
NumPy implementation of the quadrature hot loops.

The pair amplitude on a rectangular (signal x idler) grid with equal axis
spacing factorizes: writing the N-ring interference sum ring by ring,

    A(w1, w2) ~ p1(w1) p2(w2) * sum_m  [e^{i theta12}]^(N-m) * G_m(w1 + w2),

where theta12 = theta(w1) + theta(w2) and each

    G_m(s) = integral dw3  q(w3, s) * e^{i m (theta(w3) + theta(s - w3))}

is a pump-side Simpson integral that depends on the grid point only through
the diagonal sum s = w1 + w2. ``pump_tables`` evaluates G_m on the 2n-1
distinct diagonal sums (for fine and embedded-coarse Simpson weights in one
pass) and ``assemble`` contracts the tables back onto the 2-D grid.

A compiled twin of this module lives in ``_kernels_cy``; both expose the
same two functions with identical signatures and semantics.
"""

from __future__ import annotations

import numpy as np

PUMP_TOP_HAT = 0
PUMP_GAUSSIAN = 1

_BLOCK = 64  # diagonal sums processed per vectorized block


def pump_tables(
    s,
    omega3,
    w_fine,
    w_coarse,
    phi3,
    exp_theta3,
    lorentz3,
    pump_kind,
    pump_center,
    pump_width,
    pump_amp,
    sigma,
    delta,
    k0l,
    omega_ref,
    l_over_vg,
    inv_vg,
    n_phases,
):
    """
    Pump-side overlap tables G_m(s), m = 0 .. n_phases-1.

    Returns a pair (fine, coarse) of complex arrays of shape
    (len(s), n_phases), accumulated with the two weight vectors.

    The transmission phasor e^{i theta} with theta = pi + kl + 2 atan(w),
    w = sigma sin(kl)/(1 - sigma cos(kl)), is evaluated in rational form,
    e^{2i atan(w)} = (1 - w^2 + 2iw)/(1 + w^2), which is exact for all real
    w and avoids the arctangent.
    """
    s = np.ascontiguousarray(s, dtype=float)
    n_s = s.size
    g_fine = np.empty((n_s, n_phases), dtype=np.complex128)
    g_coarse = np.empty((n_s, n_phases), dtype=np.complex128)
    half = 0.5 * delta
    for start in range(0, n_s, _BLOCK):
        sb = s[start : start + _BLOCK, None]
        w4 = sb - omega3[None, :]
        x4 = w4 - pump_center
        if pump_kind == PUMP_TOP_HAT:
            phi4 = pump_amp * np.sinc(x4 / (np.pi * pump_width))
        else:
            phi4 = pump_amp * np.exp(-(x4 * x4) / (4.0 * pump_width * pump_width))
        kl4 = k0l + (w4 - omega_ref) * l_over_vg
        sin4 = np.sin(kl4)
        cos4 = np.cos(kl4)
        w = sigma * sin4 / (1.0 - sigma * cos4)
        wsq = w * w
        exp_theta4 = (
            -(cos4 + 1j * sin4) * ((1.0 - wsq) + 2j * w) / (1.0 + wsq)
        )
        lorentz4 = half / (x4 - 1j * half)
        base = (
            np.sqrt(np.maximum(w4, 0.0) * omega3[None, :])
            * inv_vg
            * phi3[None, :]
            * phi4
            * lorentz3[None, :]
            * lorentz4
        )
        phase_step = exp_theta3[None, :] * exp_theta4
        running = base
        stop = start + sb.shape[0]
        for m in range(n_phases):
            # row-wise pairwise sums: bitwise independent of the block split,
            # so threaded and serial evaluations agree exactly
            g_fine[start:stop, m] = (running * w_fine).sum(axis=1)
            g_coarse[start:stop, m] = (running * w_coarse).sum(axis=1)
            if m + 1 < n_phases:
                running = running * phase_step
    return g_fine, g_coarse


def assemble(g_table, p1, p2, u1, u2, n_rings):
    """
    Contract the overlap tables onto the grid:

        A[i, j] = p1[i] p2[j] * sum_m ( u1[i] u2[j] )^(n_rings - m)
                  * g_table[i + j, m].

    u1/u2 are the unit phasors e^{i theta} of the axis frequencies.
    """
    n1 = p1.size
    n2 = p2.size
    diag = np.add.outer(np.arange(n1), np.arange(n2))
    acc = np.zeros((n1, n2), dtype=np.complex128)
    r1 = u1**n_rings
    r2 = u2**n_rings
    step1 = np.conj(u1)
    step2 = np.conj(u2)
    for m in range(n_rings):
        acc += np.multiply.outer(r1, r2) * g_table[:, m][diag]
        if m + 1 < n_rings:
            r1 = r1 * step1
            r2 = r2 * step2
    return np.multiply.outer(p1, p2) * acc
