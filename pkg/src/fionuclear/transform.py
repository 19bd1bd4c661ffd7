"""Continuous-convention Fourier transform on sampled functions.

The forward transform is the quadrature sum

    (Ff)(xi_j) = sum_i exp(-2 pi i x_i xi_j) f(x_i) dx,

computed through an FFT.  On the reciprocal grid the node products obey
``x_i xi_j = -j/2 + i j / N``, so the quadrature sum equals
``dx * (-1)^j * fftshift(fft(f))[j]`` exactly, and the matching inverse
``dxi * N * ifft(ifftshift((-1)^j g))`` is simultaneously the exact
algebraic inverse of the forward map and the quadrature of the
continuous inverse integral.  The direct O(N^2) sums are kept alongside
as convention oracles.

Also here: quadrature L^p norms (with a max-norm sentinel at p = inf)
and the Hausdorff-Young inequality check ``|Ff|_{p'} <= |f|_p`` used to
exercise the boundedness step of the nuclearity argument.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .backend import active_backend
from .errors import ParameterDomainError, SideMismatchError
from .grid import SampledFunction, Side


def _require_side(f: SampledFunction, side: Side, op: str) -> None:
    if f.side is not side:
        raise SideMismatchError(f"{op} expects a {side.value}-side function, got {f.side.value}")


def _half_spectrum_signs(n: int) -> np.ndarray:
    # (-1)^j for j = -N/2 .. N/2 - 1
    j = np.arange(-(n // 2), n // 2)
    return np.where(j % 2 == 0, 1.0, -1.0)


def fourier_forward(f: SampledFunction) -> SampledFunction:
    """FFT-backed forward transform onto the frequency side."""
    _require_side(f, Side.SPATIAL, "fourier_forward")
    signs = _half_spectrum_signs(f.grid.size)
    vals = f.grid.dx * signs * np.fft.fftshift(np.fft.fft(f.values))
    return SampledFunction(f.grid, Side.FREQUENCY, vals)


def fourier_inverse(g: SampledFunction) -> SampledFunction:
    """FFT-backed inverse transform onto the spatial side."""
    _require_side(g, Side.FREQUENCY, "fourier_inverse")
    n = g.grid.size
    signs = _half_spectrum_signs(n)
    vals = g.grid.dxi * n * np.fft.ifft(np.fft.ifftshift(signs * g.values))
    return SampledFunction(g.grid, Side.SPATIAL, vals)


def fourier_forward_direct(f: SampledFunction) -> SampledFunction:
    """O(N^2) quadrature sum of the forward transform (convention oracle)."""
    _require_side(f, Side.SPATIAL, "fourier_forward_direct")
    grid = f.grid
    vals = active_backend().dft_sum(
        f.values, grid.spatial_nodes, grid.frequency_nodes, -1.0, grid.dx
    )
    return SampledFunction(grid, Side.FREQUENCY, vals)


def fourier_inverse_direct(g: SampledFunction) -> SampledFunction:
    """O(N^2) quadrature sum of the inverse transform (convention oracle)."""
    _require_side(g, Side.FREQUENCY, "fourier_inverse_direct")
    grid = g.grid
    vals = active_backend().dft_sum(
        g.values, grid.frequency_nodes, grid.spatial_nodes, +1.0, grid.dxi
    )
    return SampledFunction(grid, Side.SPATIAL, vals)


def lp_norm(f: SampledFunction, p: float) -> float:
    """Quadrature L^p norm ``(sum_i |f_i|^p d)^{1/p}``; max norm at p = inf."""
    p = float(p)
    if np.isnan(p) or p < 1.0:
        raise ParameterDomainError(f"lp_norm requires p >= 1 (or inf), got {p}")
    moduli = np.abs(f.values)
    if np.isinf(p):
        return float(moduli.max(initial=0.0))
    return float((np.sum(moduli**p) * f.spacing) ** (1.0 / p))


def conjugate_exponent(p: float) -> float:
    """Holder conjugate ``p' = p/(p-1)`` with the endpoints 1 <-> inf."""
    p = float(p)
    if np.isnan(p) or p < 1.0:
        raise ParameterDomainError(f"conjugate exponent requires p >= 1, got {p}")
    if p == 1.0:
        return float(np.inf)
    if np.isinf(p):
        return 1.0
    return p / (p - 1.0)


@dataclass(frozen=True)
class HausdorffYoungResult:
    """Both sides of ``|Ff|_{p'} <= |f|_p`` and whether it held."""

    lhs: float
    rhs: float
    holds: bool


def hausdorff_young_check(f: SampledFunction, p: float) -> HausdorffYoungResult:
    """Check ``|Ff|_{p'} <= |f|_p`` for 1 < p <= 2 with relative slack 1e-8."""
    _require_side(f, Side.SPATIAL, "hausdorff_young_check")
    p = float(p)
    if not (1.0 < p <= 2.0):
        raise ParameterDomainError(f"hausdorff_young_check requires 1 < p <= 2, got {p}")
    lhs = lp_norm(fourier_forward(f), conjugate_exponent(p))
    rhs = lp_norm(f, p)
    return HausdorffYoungResult(lhs=lhs, rhs=rhs, holds=bool(lhs <= rhs + 1e-8 * rhs))
