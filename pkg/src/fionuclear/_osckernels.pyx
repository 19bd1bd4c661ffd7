# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled typed-loop implementations of the quadrature hot loops.

Mirrors ``_oscpy`` exactly: same four callables, same signatures, same
array-in/array-out contracts.  Loops are written against contiguous
memoryviews with the complex exponential expanded into cos/sin so the C
compiler can vectorize them.
"""

import numpy as np

cimport cython
from libc.math cimport cos, sin

NAME = "compiled"

ctypedef double complex cplx

cdef double TWO_PI = 6.283185307179586476925286766559


def dft_sum(values, nodes_in, nodes_out, sign, weight):
    """Direct transform sum ``out[j] = w * sum_i exp(sign*2pi*i*t_out[j]*t_in[i]) v[i]``."""
    cdef const cplx[::1] v = np.ascontiguousarray(values, dtype=np.complex128)
    cdef const double[::1] t_in = np.ascontiguousarray(nodes_in, dtype=np.float64)
    cdef const double[::1] t_out = np.ascontiguousarray(nodes_out, dtype=np.float64)
    cdef double s = float(sign)
    cdef double w = float(weight)
    cdef Py_ssize_t n_in = v.shape[0], n_out = t_out.shape[0]
    out_arr = np.empty(n_out, dtype=np.complex128)
    cdef cplx[::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double t, base
    cdef cplx acc
    for j in range(n_out):
        acc = 0
        base = s * TWO_PI * t_out[j]
        for i in range(n_in):
            t = base * t_in[i]
            acc = acc + (cos(t) + 1j * sin(t)) * v[i]
        out[j] = w * acc
    return out_arr


def oscillatory_apply(phase_tab, amp, vec, weight):
    """Row sums ``out[i] = w * sum_j exp(i*phi[i,j]) a[i,j] vec[j]``."""
    cdef const double[:, ::1] phi = np.ascontiguousarray(phase_tab, dtype=np.float64)
    cdef const cplx[:, ::1] a = np.ascontiguousarray(amp, dtype=np.complex128)
    cdef const cplx[::1] f = np.ascontiguousarray(vec, dtype=np.complex128)
    cdef double w = float(weight)
    cdef Py_ssize_t n_rows = phi.shape[0], n_cols = phi.shape[1]
    out_arr = np.empty(n_rows, dtype=np.complex128)
    cdef cplx[::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double t
    cdef cplx acc
    for i in range(n_rows):
        acc = 0
        for j in range(n_cols):
            t = phi[i, j]
            acc = acc + (cos(t) + 1j * sin(t)) * a[i, j] * f[j]
        out[i] = w * acc
    return out_arr


def assemble_kernel(phase_tab, amp, xi_nodes, y_nodes, weight):
    """Kernel table ``K[i,m] = w * sum_j exp(i*phi[i,j] - 2pi*i*y[m]*xi[j]) a[i,j]``."""
    cdef const double[:, ::1] phi = np.ascontiguousarray(phase_tab, dtype=np.float64)
    cdef const cplx[:, ::1] a = np.ascontiguousarray(amp, dtype=np.complex128)
    cdef const double[::1] xi = np.ascontiguousarray(xi_nodes, dtype=np.float64)
    cdef const double[::1] y = np.ascontiguousarray(y_nodes, dtype=np.float64)
    cdef double w = float(weight)
    cdef Py_ssize_t n_rows = phi.shape[0], n_freq = phi.shape[1], n_y = y.shape[0]
    # oscillatory part of the integrand, shared across all y columns
    B_arr = np.empty((n_rows, n_freq), dtype=np.complex128)
    cdef cplx[:, ::1] B = B_arr
    cdef Py_ssize_t i, j, m
    cdef double t
    for i in range(n_rows):
        for j in range(n_freq):
            t = phi[i, j]
            B[i, j] = (cos(t) + 1j * sin(t)) * a[i, j]
    E_arr = np.empty((n_y, n_freq), dtype=np.complex128)
    cdef cplx[:, ::1] E = E_arr
    for m in range(n_y):
        for j in range(n_freq):
            t = -TWO_PI * y[m] * xi[j]
            E[m, j] = cos(t) + 1j * sin(t)
    out_arr = np.empty((n_rows, n_y), dtype=np.complex128)
    cdef cplx[:, ::1] out = out_arr
    cdef cplx acc
    for i in range(n_rows):
        for m in range(n_y):
            acc = 0
            for j in range(n_freq):
                acc = acc + B[i, j] * E[m, j]
            out[i, m] = w * acc
    return out_arr


def trace_double_sum(phase_tab, amp, x_nodes, xi_nodes, weight):
    """Corrected double sum ``w * sum_ij exp(i*(phi[i,j] - 2pi*x[i]*xi[j])) a[i,j]``."""
    cdef const double[:, ::1] phi = np.ascontiguousarray(phase_tab, dtype=np.float64)
    cdef const cplx[:, ::1] a = np.ascontiguousarray(amp, dtype=np.complex128)
    cdef const double[::1] x = np.ascontiguousarray(x_nodes, dtype=np.float64)
    cdef const double[::1] xi = np.ascontiguousarray(xi_nodes, dtype=np.float64)
    cdef double w = float(weight)
    cdef Py_ssize_t n_rows = phi.shape[0], n_cols = phi.shape[1]
    cdef Py_ssize_t i, j
    cdef double t
    cdef cplx acc = 0
    for i in range(n_rows):
        for j in range(n_cols):
            t = phi[i, j] - TWO_PI * x[i] * xi[j]
            acc = acc + (cos(t) + 1j * sin(t)) * a[i, j]
    return complex(w * acc)
