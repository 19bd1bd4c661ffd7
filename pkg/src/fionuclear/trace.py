"""Nuclear trace computed four independent ways, with agreement diagnostics.

Routes:

* formula: the corrected double quadrature
  ``sum_ij exp(i (phi - 2 pi x xi)) a dx dxi``;
* kernel: the diagonal integral ``sum_i K(x_i, x_i) dx``;
* factored: ``sum_k (int h_k)(int g_k)``, available only over the
  Kohn-Nirenberg phase on plain-product separable symbols, where the
  corrector cancels the oscillation exactly;
* spectral: the eigenvalue sum of the weighted kernel matrix.

The formula and kernel routes are the same finite sum reordered, so they
agree to rounding.  The spectral route carries genuine discretization
error and is the one whose agreement is a statement about the operator,
meaningful on the exponent curve ``1/r = 1 + |1/p - 1/2|`` (with a
single Lebesgue exponent, so p1 = p2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .backend import active_backend
from .errors import ParameterDomainError, PhaseRegimeError, SolverError
from .grid import Grid
from .operator import DEFAULT_TRUNCATION_BUDGET, KernelMatrix, _check_edge_decay, _resolve_grid, _symbol_table, discretize
from .phase import PhaseFn
from .symbols import Decomposition, SeparableSymbol, Side, Symbol


def nuclear_trace_formula(
    phase: PhaseFn,
    symbol: Symbol,
    grid: Grid | None = None,
    budget: float = DEFAULT_TRUNCATION_BUDGET,
) -> complex:
    """Double quadrature of ``exp(i(phi - 2 pi x xi)) a`` over all node pairs.

    The integrand truncates in both variables, so the decay budget is
    checked on the frequency edges and the spatial edges of the symbol
    table.
    """
    grid = _resolve_grid(symbol, grid, "nuclear_trace_formula")
    amp = _symbol_table(symbol, grid)
    _check_edge_decay(np.abs(amp[:, [0, -1]]).max(initial=0.0), grid, budget, "trace integrand")
    _check_edge_decay(
        np.abs(amp[[0, -1], :]).max(initial=0.0), grid, budget, "trace integrand", Side.SPATIAL
    )
    return active_backend().trace_double_sum(
        phase.grid_values(grid), amp, grid.spatial_nodes, grid.frequency_nodes,
        grid.dx * grid.dxi,
    )


def kernel_diagonal_trace(M: KernelMatrix) -> complex:
    """Diagonal quadrature ``sum_i K(x_i, x_i) dx``."""
    diag = np.trace(M.entries)
    return complex(diag if M.weight_folded else diag * M.grid.dx)


def factored_trace(d: Decomposition, phase: PhaseFn) -> complex:
    """Trace from the factors alone: ``sum_k (sum_i h_k dx)(sum_j g_k dxi)``.

    Only the Kohn-Nirenberg application phase is supported: there the
    trace corrector cancels the kernel oscillation and the diagonal
    pairing of h_k against the inverse transform of g_k at lag zero
    collapses to the product of the two integrals.
    """
    if not phase.is_kohn_nirenberg():
        raise PhaseRegimeError(
            "factored trace is only defined over the kohn_nirenberg phase"
        )
    grid = d.grid
    total = 0.0 + 0.0j
    for h, g in d.factors:
        total += (np.sum(h.values) * grid.dx) * (np.sum(g.values) * grid.dxi)
    return complex(total)


@dataclass(frozen=True)
class SpectralResult:
    """Eigenvalues of the weighted kernel matrix and their sum."""

    eigen_sum: complex
    eigenvalues: np.ndarray

    def __post_init__(self):
        ev = np.array(self.eigenvalues, dtype=np.complex128, copy=True)
        ev.flags.writeable = False
        object.__setattr__(self, "eigenvalues", ev)
        object.__setattr__(self, "eigen_sum", complex(self.eigen_sum))


def _sort_descending_modulus(ev: np.ndarray) -> np.ndarray:
    # primary: descending modulus; ties: descending real, then imaginary
    order = np.lexsort((-ev.imag, -ev.real, -np.abs(ev)))
    return ev[order]


def spectral_trace(M: KernelMatrix) -> SpectralResult:
    """Full non-symmetric eigenvalue set of the weighted matrix."""
    try:
        ev = np.linalg.eigvals(M.operator_matrix)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"eigenvalue solver failed on the weighted kernel matrix: {exc}") from exc
    ev = _sort_descending_modulus(ev)
    return SpectralResult(eigen_sum=complex(np.sum(ev)), eigenvalues=ev)


def spectral_formula_applies(p: float, r: float, tol: float = 1e-12) -> bool:
    """Whether (p, r) sits on the curve ``1/r = 1 + |1/p - 1/2|``."""
    p = float(p)
    r = float(r)
    if not (1.0 < p < np.inf):
        raise ParameterDomainError(f"spectral applicability requires 1 < p < inf, got p = {p}")
    if not (0.0 < r <= 1.0):
        raise ParameterDomainError(f"spectral applicability requires 0 < r <= 1, got r = {r}")
    return bool(abs(1.0 / r - 1.0 - abs(1.0 / p - 0.5)) <= tol)


@dataclass(frozen=True)
class Applicability:
    """Exponent context for the spectral comparison."""

    p: float
    r: float
    spectral_formula_applies: bool


@dataclass(frozen=True)
class TraceReport:
    """All trace routes, their pairwise gaps, and the exponent context."""

    formula_trace: complex
    kernel_trace: complex
    factored_trace: complex | None
    matrix_trace: complex
    eigen_sum: complex
    eigenvalues: np.ndarray
    pairwise_discrepancies: dict
    applicability: Applicability

    def __post_init__(self):
        ev = np.array(self.eigenvalues, dtype=np.complex128, copy=True)
        ev.flags.writeable = False
        object.__setattr__(self, "eigenvalues", ev)
        object.__setattr__(self, "pairwise_discrepancies", dict(self.pairwise_discrepancies))

    @property
    def max_discrepancy(self) -> float:
        return max(self.pairwise_discrepancies.values())


def trace_report(
    phase: PhaseFn,
    symbol: Symbol,
    d: Decomposition | None = None,
    grid: Grid | None = None,
    budget: float = DEFAULT_TRUNCATION_BUDGET,
    exponents: tuple | None = None,
) -> TraceReport:
    """Run every applicable trace route and tabulate their agreement.

    The factored route is included when a decomposition is at hand (given
    explicitly or carried by a separable symbol), the application phase
    is Kohn-Nirenberg, and the symbol's construction phase is zero, which
    is the regime where the factored formula computes the same trace.

    ``exponents`` is an optional ``(r, p1, p2)`` override for the
    applicability record; it defaults to the decomposition's exponents,
    or to the Hilbert-space point (1, 2, 2).
    """
    grid = _resolve_grid(symbol, grid, "trace_report")
    formula = complex(nuclear_trace_formula(phase, symbol, grid, budget))
    M = discretize(phase, symbol, grid, budget)
    kernel = complex(kernel_diagonal_trace(M))
    matrix_trace = complex(np.trace(M.operator_matrix))
    spectral = spectral_trace(M)

    if d is None and isinstance(symbol, SeparableSymbol):
        d = symbol.decomposition
    construction_zero = (
        not isinstance(symbol, SeparableSymbol) or symbol.phase.is_structurally_zero()
    )
    factored = None
    if d is not None and phase.is_kohn_nirenberg() and construction_zero:
        factored = complex(factored_trace(d, phase))

    if exponents is not None:
        r, p1, p2 = (float(v) for v in exponents)
    elif d is not None:
        r, p1, p2 = d.r, d.p1, d.p2
    else:
        r, p1, p2 = 1.0, 2.0, 2.0
    applies = spectral_formula_applies(p1, r) and p1 == p2
    applicability = Applicability(p=p1, r=r, spectral_formula_applies=applies)

    routes = {"formula": formula, "kernel": kernel, "eigen": spectral.eigen_sum}
    if factored is not None:
        routes["factored"] = factored
    names = list(routes)
    discrepancies = {
        f"{a}_vs_{b}": abs(routes[a] - routes[b])
        for i, a in enumerate(names)
        for b in names[i + 1 :]
    }

    return TraceReport(
        formula_trace=formula,
        kernel_trace=kernel,
        factored_trace=factored,
        matrix_trace=matrix_trace,
        eigen_sum=spectral.eigen_sum,
        eigenvalues=spectral.eigenvalues,
        pairwise_discrepancies=discrepancies,
        applicability=applicability,
    )
