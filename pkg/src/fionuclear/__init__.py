"""Nuclearity diagnostics for discretized Fourier integral operators.

Builds operators ``Ff(x) = int exp(i phi(x, xi)) a(x, xi) fhat(xi) dxi``
from closed-family phase and symbol data on a reciprocal grid, certifies
separable decompositions of the symbol through residuals and the E^r
summability functional, and cross-checks the nuclear trace four
independent ways (double-quadrature formula, kernel diagonal, factor
integrals, eigenvalue sum).
"""

from .backend import active_backend, active_backend_name, get_backend
from .errors import (
    FioNuclearError,
    GridMismatchError,
    OutOfDomainError,
    ParameterDomainError,
    PhaseRegimeError,
    RegimeError,
    ScenarioError,
    SideMismatchError,
    SolverError,
    TruncationError,
)
from .grid import FunctionExpr, Grid, SampledFunction, Side, sample
from .nuclearity import (
    CERTIFIED,
    NOT_CERTIFIED,
    VerificationReport,
    amplitude_from_kernel,
    e_r_functional,
    extract_decomposition,
    reconstruct_symbol,
    verify_decomposition,
)
from .operator import (
    FactorizationCheck,
    KernelMatrix,
    apply_fio,
    compose_factorization,
    discretize,
    kernel_eval,
)
from .phase import PhaseFn
from .scenario import RealizedScenario, Scenario, load_scenario
from .symbols import (
    Decomposition,
    PointwiseSymbol,
    Regime,
    SeparableSymbol,
    Symbol,
    eval_symbol,
    symbol_grid_values,
    validate_exponents,
)
from .trace import (
    Applicability,
    SpectralResult,
    TraceReport,
    factored_trace,
    kernel_diagonal_trace,
    nuclear_trace_formula,
    spectral_formula_applies,
    spectral_trace,
    trace_report,
)
from .transform import (
    HausdorffYoungResult,
    conjugate_exponent,
    fourier_forward,
    fourier_forward_direct,
    fourier_inverse,
    fourier_inverse_direct,
    hausdorff_young_check,
    lp_norm,
)

__version__ = "0.1.0"

__all__ = [
    "Applicability",
    "CERTIFIED",
    "Decomposition",
    "FactorizationCheck",
    "FioNuclearError",
    "FunctionExpr",
    "Grid",
    "GridMismatchError",
    "HausdorffYoungResult",
    "KernelMatrix",
    "NOT_CERTIFIED",
    "OutOfDomainError",
    "ParameterDomainError",
    "PhaseFn",
    "PhaseRegimeError",
    "PointwiseSymbol",
    "RealizedScenario",
    "Regime",
    "RegimeError",
    "SampledFunction",
    "Scenario",
    "ScenarioError",
    "SeparableSymbol",
    "Side",
    "SideMismatchError",
    "SolverError",
    "SpectralResult",
    "Symbol",
    "TraceReport",
    "TruncationError",
    "VerificationReport",
    "active_backend",
    "active_backend_name",
    "amplitude_from_kernel",
    "apply_fio",
    "compose_factorization",
    "conjugate_exponent",
    "discretize",
    "e_r_functional",
    "eval_symbol",
    "extract_decomposition",
    "factored_trace",
    "fourier_forward",
    "fourier_forward_direct",
    "fourier_inverse",
    "fourier_inverse_direct",
    "get_backend",
    "hausdorff_young_check",
    "kernel_diagonal_trace",
    "kernel_eval",
    "load_scenario",
    "lp_norm",
    "nuclear_trace_formula",
    "reconstruct_symbol",
    "sample",
    "spectral_formula_applies",
    "spectral_trace",
    "symbol_grid_values",
    "trace_report",
    "validate_exponents",
    "verify_decomposition",
]
