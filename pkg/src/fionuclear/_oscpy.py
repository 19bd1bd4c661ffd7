"""Vectorized numpy implementations of the quadrature hot loops.

This is the always-available fallback behind :mod:`fionuclear.backend`;
the compiled module ``_osckernels`` exports the same four callables with
identical signatures and must agree with these to rounding error.

All functions take plain arrays (no domain types) so both backends stay
import-light and trivially comparable.
"""

from __future__ import annotations

import numpy as np

NAME = "python"


def dft_sum(values, nodes_in, nodes_out, sign, weight):
    """Direct transform sum ``out[j] = w * sum_i exp(sign*2pi*i*t_out[j]*t_in[i]) v[i]``."""
    v = np.asarray(values, dtype=np.complex128)
    t_in = np.asarray(nodes_in, dtype=float)
    t_out = np.asarray(nodes_out, dtype=float)
    E = np.exp((2j * np.pi * sign) * np.outer(t_out, t_in))
    return weight * (E @ v)


def oscillatory_apply(phase_tab, amp, vec, weight):
    """Row sums ``out[i] = w * sum_j exp(i*phi[i,j]) a[i,j] vec[j]``."""
    B = np.exp(1j * np.asarray(phase_tab, dtype=float)) * np.asarray(amp, dtype=np.complex128)
    return weight * (B @ np.asarray(vec, dtype=np.complex128))


def assemble_kernel(phase_tab, amp, xi_nodes, y_nodes, weight):
    """Kernel table ``K[i,m] = w * sum_j exp(i*phi[i,j] - 2pi*i*y[m]*xi[j]) a[i,j]``."""
    B = np.exp(1j * np.asarray(phase_tab, dtype=float)) * np.asarray(amp, dtype=np.complex128)
    E = np.exp(-2j * np.pi * np.outer(np.asarray(xi_nodes, float), np.asarray(y_nodes, float)))
    return weight * (B @ E)


def trace_double_sum(phase_tab, amp, x_nodes, xi_nodes, weight):
    """Corrected double sum ``w * sum_ij exp(i*(phi[i,j] - 2pi*x[i]*xi[j])) a[i,j]``."""
    corr = np.asarray(phase_tab, dtype=float) - 2.0 * np.pi * np.outer(
        np.asarray(x_nodes, float), np.asarray(xi_nodes, float)
    )
    return complex(weight * np.sum(np.exp(1j * corr) * np.asarray(amp, dtype=np.complex128)))
