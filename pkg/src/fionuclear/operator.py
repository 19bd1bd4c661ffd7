"""Building and applying Fourier integral operators on the grid.

The operator is ``Ff(x) = int exp(i phi(x, xi)) a(x, xi) fhat(xi) dxi``
with kernel ``K(x, y) = int exp(i phi(x, xi) - 2 pi i y xi) a(x, xi) dxi``.
All integrals are uniform quadratures over the frequency nodes, so the
factorization ``F = K_sigma o fourier_forward`` holds as a reordering of
the same finite sums.

Fast paths exist when the oscillations cancel structurally:

* application phase equal to the symbol's construction phase: the
  operator degenerates to rank K, ``Ff = sum_k h_k <g_k, fhat> dxi``;
* Kohn-Nirenberg application phase over a plain-product symbol (zero
  construction phase): ``Ff = sum_k h_k * inverse_transform(g_k fhat)``.

Everything else takes the dense O(N^2) route through the backend.

A kernel row decays like the symbol does; every entry point estimates
the truncated frequency tail from the edge columns of its integrand and
raises a truncation error when the estimate exceeds the budget.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .backend import active_backend
from .errors import GridMismatchError, OutOfDomainError, ParameterDomainError, TruncationError
from .grid import Grid, SampledFunction, Side
from .phase import PhaseFn
from .symbols import SeparableSymbol, Symbol
from .transform import _require_side, fourier_forward, fourier_inverse, lp_norm

DEFAULT_TRUNCATION_BUDGET = 1e-8


@dataclass(frozen=True)
class KernelMatrix:
    """N x N table ``entries[i, m] = K(x_i, y_m)`` over one grid.

    ``weight_folded`` records whether the quadrature weight dy has been
    multiplied in; the raw kernel table keeps it separate.
    """

    grid: Grid
    entries: np.ndarray
    weight_folded: bool = False

    def __post_init__(self):
        n = self.grid.size
        entries = np.array(self.entries, dtype=np.complex128, copy=True)
        if entries.shape != (n, n):
            raise ParameterDomainError(
                f"kernel matrix must be {n} x {n} for this grid, got {entries.shape}"
            )
        if not np.all(np.isfinite(entries.real) & np.isfinite(entries.imag)):
            raise ParameterDomainError("kernel matrix entries must all be finite")
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    @property
    def operator_matrix(self) -> np.ndarray:
        """The matrix that acts on sampled vectors: entries times dy."""
        if self.weight_folded:
            return self.entries
        return self.entries * self.grid.dx

    def apply(self, f: SampledFunction) -> SampledFunction:
        """Matrix-vector product standing in for ``int K(x, y) f(y) dy``."""
        if f.grid != self.grid:
            raise GridMismatchError("kernel matrix and function live on different grids")
        if f.side is not Side.SPATIAL:
            raise ParameterDomainError("kernel matrix applies to spatial-side functions")
        return SampledFunction(self.grid, Side.SPATIAL, self.operator_matrix @ f.values)


def _resolve_grid(symbol: Symbol, grid: Grid | None, op: str) -> Grid:
    own = getattr(symbol, "grid", None)
    if grid is None:
        if own is None:
            raise ParameterDomainError(f"{op} needs an explicit grid for a pointwise symbol")
        return own
    if own is not None and grid != own:
        raise GridMismatchError(f"{op}: grid does not match the separable symbol's factor grid")
    return grid


def _check_edge_decay(
    edge_max: float, grid: Grid, budget: float, what: str, side: Side = Side.FREQUENCY
) -> None:
    tail = float(edge_max) * grid.spacing(side) * grid.size
    if tail > budget:
        raise TruncationError(
            f"{what} fails the {side.value}-decay budget: estimated tail {tail:.3e} "
            f"exceeds {budget:.3e}; enlarge the grid or pick decaying factors",
            tail_estimate=tail,
            budget=budget,
        )


def kernel_eval(
    phase: PhaseFn,
    symbol: Symbol,
    x: float,
    y: float,
    grid: Grid | None = None,
    budget: float = DEFAULT_TRUNCATION_BUDGET,
) -> complex:
    """One kernel value ``K(x, y)`` by quadrature over the frequency nodes."""
    grid = _resolve_grid(symbol, grid, "kernel_eval")
    for side, t, name in ((Side.SPATIAL, x, "x"), (Side.SPATIAL, y, "y")):
        if not np.all(grid.contains(side, t)):
            raise OutOfDomainError(f"kernel_eval argument {name} = {t:g} outside the grid domain")
    xi = grid.frequency_nodes
    row = np.asarray(symbol.evaluate(float(x), xi), dtype=np.complex128)
    _check_edge_decay(max(abs(row[0]), abs(row[-1])), grid, budget, "kernel integrand")
    osc = np.exp(1j * (phase.evaluate(float(x), xi) - 2.0 * np.pi * float(y) * xi))
    return complex(np.sum(osc * row) * grid.dxi)


def _symbol_table(symbol: Symbol, grid: Grid) -> np.ndarray:
    return np.asarray(symbol.grid_values(grid), dtype=np.complex128)


def _phases_cancel(app: PhaseFn, construction: PhaseFn) -> bool:
    return app == construction or (
        app.is_structurally_zero() and construction.is_structurally_zero()
    )


def apply_fio(
    phase: PhaseFn,
    symbol: Symbol,
    f: SampledFunction,
    budget: float = DEFAULT_TRUNCATION_BUDGET,
    force_dense: bool = False,
) -> SampledFunction:
    """Apply the operator to a spatial-side function.

    The tail check runs on ``|a * fhat|`` rather than the symbol alone:
    a non-decaying symbol is harmless when the input's spectrum decays,
    and the identity symbol must remain applicable.
    """
    _require_side(f, Side.SPATIAL, "apply_fio")
    grid = _resolve_grid(symbol, f.grid, "apply_fio")
    fhat = fourier_forward(f)
    amp = _symbol_table(symbol, grid)
    weighted_edges = np.abs(amp[:, [0, -1]]) * np.abs(fhat.values[[0, -1]])[None, :]
    _check_edge_decay(weighted_edges.max(initial=0.0), grid, budget, "operator integrand")

    if not force_dense and isinstance(symbol, SeparableSymbol):
        H = symbol.decomposition.spatial_matrix
        G = symbol.decomposition.frequency_matrix
        if _phases_cancel(phase, symbol.phase):
            coeffs = (G @ fhat.values) * grid.dxi
            return SampledFunction(grid, Side.SPATIAL, H.T @ coeffs)
        if phase.is_kohn_nirenberg() and symbol.phase.is_structurally_zero():
            acc = np.zeros(grid.size, dtype=np.complex128)
            for k in range(H.shape[0]):
                filtered = SampledFunction(grid, Side.FREQUENCY, G[k] * fhat.values)
                acc += H[k] * fourier_inverse(filtered).values
            return SampledFunction(grid, Side.SPATIAL, acc)

    out = active_backend().oscillatory_apply(phase.grid_values(grid), amp, fhat.values, grid.dxi)
    return SampledFunction(grid, Side.SPATIAL, out)


def discretize(
    phase: PhaseFn,
    symbol: Symbol,
    grid: Grid | None = None,
    budget: float = DEFAULT_TRUNCATION_BUDGET,
) -> KernelMatrix:
    """Kernel table ``K(x_i, y_m)`` over all node pairs, weight kept separate."""
    grid = _resolve_grid(symbol, grid, "discretize")
    amp = _symbol_table(symbol, grid)
    _check_edge_decay(np.abs(amp[:, [0, -1]]).max(initial=0.0), grid, budget, "kernel integrand")
    entries = active_backend().assemble_kernel(
        phase.grid_values(grid), amp, grid.frequency_nodes, grid.spatial_nodes, grid.dxi
    )
    return KernelMatrix(grid, entries, weight_folded=False)


@dataclass(frozen=True)
class FactorizationCheck:
    """Both routes of ``F = K_sigma o fourier_forward`` and their gap."""

    direct: SampledFunction
    factored: SampledFunction
    discrepancy: float


def compose_factorization(
    phase: PhaseFn,
    symbol: Symbol,
    f: SampledFunction,
    budget: float = DEFAULT_TRUNCATION_BUDGET,
) -> FactorizationCheck:
    """Compare applying F in one shot against K_sigma applied to fhat."""
    direct = apply_fio(phase, symbol, f, budget=budget)
    grid = direct.grid
    amp = _symbol_table(symbol, grid)
    fhat = fourier_forward(f)
    vals = active_backend().oscillatory_apply(phase.grid_values(grid), amp, fhat.values, grid.dxi)
    factored = SampledFunction(grid, Side.SPATIAL, vals)
    diff = lp_norm(direct - factored, 2.0)
    scale = lp_norm(direct, 2.0)
    return FactorizationCheck(direct, factored, diff / scale if scale > 0 else diff)
