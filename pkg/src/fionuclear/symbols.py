"""Symbols ``a(x, xi)`` and their separable decompositions.

Two kinds of symbol:

* pointwise: a product ``u(x) * v(xi)`` of two closed-family factors,
  evaluable exactly anywhere.  Serves as ground truth that a candidate
  decomposition can be verified against.
* separable: built from a :class:`Decomposition` and a construction
  phase, ``a(x, xi) = exp(-i phi(x, xi)) sum_k h_k(x) g_k(xi)``.  The
  factor functions are stored as node samples and looked up by nearest
  node off the grid; the phase is a closed form and is evaluated at the
  query point itself.

A decomposition is the finite-rank stand-in for the summable factor
sequences of the nuclearity criteria: pairs ``(h_k, g_k)`` with the
exponent data ``(r, p1, p2)`` and the regime that fixes which norm the
frequency factors are measured in.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Union

import numpy as np

from .errors import GridMismatchError, ParameterDomainError, RegimeError
from .grid import FunctionExpr, Grid, SampledFunction, Side
from .phase import PhaseFn


class Regime(enum.Enum):
    """Exponent regime selecting the norm for the frequency factors.

    LOW covers 1 < p1 <= 2, measuring g_k in L^{p1}; HIGH covers
    2 <= p1 < inf, measuring g_k in L^{p1'}.  At p1 = 2 the two coincide.
    """

    LOW = "low"
    HIGH = "high"


def validate_exponents(r: float, p1: float, p2: float, regime: Regime) -> None:
    """Raise RegimeError unless (r, p1, p2) sit inside the regime's ranges."""
    if not (0.0 < r <= 1.0):
        raise RegimeError(f"r must lie in (0, 1], got {r}")
    if not (1.0 <= p2 < np.inf):
        raise RegimeError(f"p2 must lie in [1, inf), got {p2}")
    if regime is Regime.LOW:
        if not (1.0 < p1 <= 2.0):
            raise RegimeError(f"regime 'low' requires 1 < p1 <= 2, got p1 = {p1}")
    else:
        if not (2.0 <= p1 < np.inf):
            raise RegimeError(f"regime 'high' requires 2 <= p1 < inf, got p1 = {p1}")


@dataclass(frozen=True)
class Decomposition:
    """Finite sequence of factor pairs with exponent data.

    ``factors[k] = (h_k, g_k)`` with ``h_k`` sampled on the spatial side
    and ``g_k`` on the frequency side of one common grid.
    """

    factors: tuple
    r: float
    p1: float
    p2: float
    regime: Regime

    def __post_init__(self):
        factors = tuple((h, g) for h, g in self.factors)
        if not factors:
            raise ParameterDomainError("decomposition needs at least one factor pair")
        grid = factors[0][0].grid
        for k, (h, g) in enumerate(factors):
            if not isinstance(h, SampledFunction) or not isinstance(g, SampledFunction):
                raise ParameterDomainError(f"factor pair {k} must be SampledFunction instances")
            if h.side is not Side.SPATIAL or g.side is not Side.FREQUENCY:
                raise ParameterDomainError(
                    f"factor pair {k} must be (spatial h, frequency g), got "
                    f"({h.side.value}, {g.side.value})"
                )
            if h.grid != grid or g.grid != grid:
                raise GridMismatchError("all decomposition factors must share one grid")
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "p1", float(self.p1))
        object.__setattr__(self, "p2", float(self.p2))
        if not isinstance(self.regime, Regime):
            object.__setattr__(self, "regime", Regime(self.regime))
        validate_exponents(self.r, self.p1, self.p2, self.regime)

    @property
    def grid(self) -> Grid:
        return self.factors[0][0].grid

    @property
    def rank(self) -> int:
        return len(self.factors)

    @cached_property
    def spatial_matrix(self) -> np.ndarray:
        """K x N array stacking the h_k node values."""
        H = np.vstack([h.values for h, _ in self.factors])
        H.flags.writeable = False
        return H

    @cached_property
    def frequency_matrix(self) -> np.ndarray:
        """K x N array stacking the g_k node values."""
        G = np.vstack([g.values for _, g in self.factors])
        G.flags.writeable = False
        return G

    def truncate(self, m: int) -> "Decomposition":
        """Decomposition keeping only the first ``m`` factor pairs."""
        if not (1 <= m <= self.rank):
            raise ParameterDomainError(f"truncation length must be in [1, {self.rank}], got {m}")
        return Decomposition(self.factors[:m], self.r, self.p1, self.p2, self.regime)


@dataclass(frozen=True)
class PointwiseSymbol:
    """Product symbol ``a(x, xi) = u(x) v(xi)`` of closed-family factors."""

    x_factor: FunctionExpr
    xi_factor: FunctionExpr

    kind = "pointwise"

    def __post_init__(self):
        if self.x_factor.needs_rng or self.xi_factor.needs_rng:
            raise ParameterDomainError(
                "pointwise symbol factors must be concrete (realize random families first)"
            )

    def evaluate(self, x, xi) -> np.ndarray:
        return self.x_factor.evaluate(x) * self.xi_factor.evaluate(xi)

    def grid_values(self, grid: Grid) -> np.ndarray:
        """The N x N table ``a(x_i, xi_j)``, exact from the closed forms."""
        u = self.x_factor.evaluate(grid.spatial_nodes)
        v = self.xi_factor.evaluate(grid.frequency_nodes)
        return np.outer(u, v)


@dataclass(frozen=True)
class SeparableSymbol:
    """Symbol ``exp(-i phi) sum_k h_k(x) g_k(xi)`` over sampled factors."""

    decomposition: Decomposition
    phase: PhaseFn

    kind = "separable"

    @property
    def grid(self) -> Grid:
        return self.decomposition.grid

    def evaluate(self, x, xi) -> np.ndarray:
        """Nearest-node factor lookup times the exact phase prefactor.

        Raises OutOfDomainError when (x, xi) falls outside the grid's
        nearest-node coverage.
        """
        grid = self.grid
        ix = grid.nearest_index(Side.SPATIAL, x)
        jxi = grid.nearest_index(Side.FREQUENCY, xi)
        H = self.decomposition.spatial_matrix
        G = self.decomposition.frequency_matrix
        s = np.sum(H[:, ix] * G[:, jxi], axis=0)
        return np.exp(-1j * self.phase.evaluate(x, xi)) * s

    def grid_values(self, grid: Grid) -> np.ndarray:
        """The N x N table ``a(x_i, xi_j)``; grid must match the factors'."""
        if grid != self.grid:
            raise GridMismatchError("separable symbol evaluated on a different grid than its factors")
        H = self.decomposition.spatial_matrix
        G = self.decomposition.frequency_matrix
        return np.exp(-1j * self.phase.grid_values(grid)) * (H.T @ G)


Symbol = Union[PointwiseSymbol, SeparableSymbol]


def eval_symbol(sym: Symbol, x: float, xi: float) -> complex:
    """Evaluate a symbol of either kind at one point."""
    return complex(sym.evaluate(x, xi))


def symbol_grid_values(sym: Symbol, grid: Grid) -> np.ndarray:
    """The N x N node table of a symbol of either kind."""
    return sym.grid_values(grid)
