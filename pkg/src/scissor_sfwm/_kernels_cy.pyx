# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_kernels_np``; same functions, same semantics."""

import numpy as np

from libc.math cimport cos, exp, sin, sqrt

ctypedef double complex dcomplex

PUMP_TOP_HAT = 0
PUMP_GAUSSIAN = 1


def pump_tables(
    double[::1] s,
    double[::1] omega3,
    double[::1] w_fine,
    double[::1] w_coarse,
    double[::1] phi3,
    dcomplex[::1] exp_theta3,
    dcomplex[::1] lorentz3,
    int pump_kind,
    double pump_center,
    double pump_width,
    double pump_amp,
    double sigma,
    double delta,
    double k0l,
    double omega_ref,
    double l_over_vg,
    double inv_vg,
    int n_phases,
):
    cdef Py_ssize_t n_s = s.shape[0]
    cdef Py_ssize_t n_k = omega3.shape[0]
    g_fine_arr = np.zeros((n_s, n_phases), dtype=np.complex128)
    g_coarse_arr = np.zeros((n_s, n_phases), dtype=np.complex128)
    cdef dcomplex[:, ::1] g_fine = g_fine_arr
    cdef dcomplex[:, ::1] g_coarse = g_coarse_arr
    cdef Py_ssize_t d, k, m
    cdef double w4, x4, phi4, kl4, arg, sin4, cos4, w, wsq
    cdef double half = 0.5 * delta
    cdef dcomplex lorentz4, base, step, run_f, run_c, exp_theta4
    with nogil:
        for d in range(n_s):
            for k in range(n_k):
                w4 = s[d] - omega3[k]
                if w4 <= 0.0:
                    continue
                x4 = w4 - pump_center
                if pump_kind == 0:
                    arg = x4 / pump_width
                    if arg == 0.0:
                        phi4 = pump_amp
                    else:
                        phi4 = pump_amp * sin(arg) / arg
                else:
                    phi4 = pump_amp * exp(-x4 * x4 / (4.0 * pump_width * pump_width))
                kl4 = k0l + (w4 - omega_ref) * l_over_vg
                sin4 = sin(kl4)
                cos4 = cos(kl4)
                w = sigma * sin4 / (1.0 - sigma * cos4)
                wsq = w * w
                exp_theta4 = (
                    -(cos4 + 1j * sin4) * ((1.0 - wsq) + 2j * w) / (1.0 + wsq)
                )
                lorentz4 = half / (x4 - 1j * half)
                base = (
                    sqrt(w4 * omega3[k])
                    * inv_vg
                    * phi3[k]
                    * phi4
                    * lorentz3[k]
                    * lorentz4
                )
                step = exp_theta3[k] * exp_theta4
                run_f = w_fine[k] * base
                run_c = w_coarse[k] * base
                for m in range(n_phases):
                    g_fine[d, m] = g_fine[d, m] + run_f
                    g_coarse[d, m] = g_coarse[d, m] + run_c
                    run_f = run_f * step
                    run_c = run_c * step
    return g_fine_arr, g_coarse_arr


def assemble(
    dcomplex[:, ::1] g_table,
    dcomplex[::1] p1,
    dcomplex[::1] p2,
    dcomplex[::1] u1,
    dcomplex[::1] u2,
    int n_rings,
):
    cdef Py_ssize_t n1 = p1.shape[0]
    cdef Py_ssize_t n2 = p2.shape[0]
    out_arr = np.empty((n1, n2), dtype=np.complex128)
    cdef dcomplex[:, ::1] out = out_arr
    r1_arr = np.asarray(u1) ** n_rings
    r2_arr = np.asarray(u2) ** n_rings
    step1_arr = np.conj(np.asarray(u1))
    step2_arr = np.conj(np.asarray(u2))
    cdef dcomplex[::1] r1 = r1_arr
    cdef dcomplex[::1] r2 = r2_arr
    cdef dcomplex[::1] step1 = step1_arr
    cdef dcomplex[::1] step2 = step2_arr
    cdef Py_ssize_t i, j, m
    cdef dcomplex phase, step, acc
    with nogil:
        for i in range(n1):
            for j in range(n2):
                phase = r1[i] * r2[j]
                step = step1[i] * step2[j]
                acc = 0
                for m in range(n_rings):
                    acc = acc + phase * g_table[i + j, m]
                    phase = phase * step
                out[i, j] = p1[i] * p2[j] * acc
    return out_arr
