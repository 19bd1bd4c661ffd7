"""Phase functions ``phi(x, xi)`` for oscillatory kernels.

Three closed families:

* ``kohn_nirenberg``: ``phi = 2 pi x xi``, the plane-wave phase.  Operators
  built on it reduce to multiplier-type compositions with the Fourier
  transform, which several fast paths and the factored trace rely on.
* ``linear_shifted (shift, offset)``: ``phi = 2 pi (x + shift) xi + offset``,
  a translation composed with a constant phase rotation.
* ``polynomial (k, coeffs)``: ``phi = sum_{m,q < k} c[m,q] x^m xi^q`` with the
  ``k x k`` coefficient table flattened row-major.  The empty table is the
  zero phase.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterDomainError

_FAMILIES = ("kohn_nirenberg", "linear_shifted", "polynomial")
_MAX_POLY_ORDER = 4


@dataclass(frozen=True)
class PhaseFn:
    """Member of the closed phase-function family."""

    family: str
    params: tuple = ()

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ParameterDomainError(
                f"unknown phase family {self.family!r}; known: {list(_FAMILIES)}"
            )
        params = tuple(float(p) for p in self.params)
        if not all(np.isfinite(params)):
            raise ParameterDomainError(f"{self.family} phase parameters must be finite")
        object.__setattr__(self, "params", params)
        if self.family == "kohn_nirenberg" and params:
            raise ParameterDomainError("kohn_nirenberg phase takes no parameters")
        if self.family == "linear_shifted" and len(params) != 2:
            raise ParameterDomainError(
                f"linear_shifted phase expects (shift, offset), got {params}"
            )
        if self.family == "polynomial":
            k = int(round(np.sqrt(len(params))))
            if k * k != len(params) or k > _MAX_POLY_ORDER:
                raise ParameterDomainError(
                    f"polynomial phase expects a flattened k x k table with k <= {_MAX_POLY_ORDER}, "
                    f"got {len(params)} coefficients"
                )

    @classmethod
    def kohn_nirenberg(cls) -> "PhaseFn":
        return cls("kohn_nirenberg")

    @classmethod
    def linear_shifted(cls, shift: float, offset: float) -> "PhaseFn":
        return cls("linear_shifted", (shift, offset))

    @classmethod
    def polynomial(cls, coeffs) -> "PhaseFn":
        table = np.asarray(coeffs, dtype=float)
        if table.ndim == 2:
            if table.shape[0] != table.shape[1]:
                raise ParameterDomainError(
                    f"polynomial phase table must be square, got shape {table.shape}"
                )
            table = table.reshape(-1)
        return cls("polynomial", tuple(table.tolist()))

    @classmethod
    def zero(cls) -> "PhaseFn":
        return cls("polynomial", ())

    @property
    def order(self) -> int:
        """Side length of the polynomial coefficient table (0 for empty)."""
        if self.family != "polynomial":
            raise ParameterDomainError(f"{self.family} phase has no coefficient table")
        return int(round(np.sqrt(len(self.params))))

    def is_kohn_nirenberg(self) -> bool:
        return self.family == "kohn_nirenberg"

    def is_structurally_zero(self) -> bool:
        """True if the phase is identically zero by construction.

        Structural, not numerical: the empty polynomial table and the
        all-zero table qualify; ``linear_shifted(0, 0)`` does not.
        """
        return self.family == "polynomial" and all(c == 0.0 for c in self.params)

    def evaluate(self, x, xi) -> np.ndarray:
        """Evaluate ``phi`` with numpy broadcasting between ``x`` and ``xi``."""
        x = np.asarray(x, dtype=float)
        xi = np.asarray(xi, dtype=float)
        if self.family == "kohn_nirenberg":
            return 2.0 * np.pi * x * xi
        if self.family == "linear_shifted":
            shift, offset = self.params
            return 2.0 * np.pi * (x + shift) * xi + offset
        k = self.order
        out = np.zeros(np.broadcast_shapes(x.shape, xi.shape), dtype=float)
        for m in range(k):
            for q in range(k):
                c = self.params[m * k + q]
                if c != 0.0:
                    out = out + c * x**m * xi**q
        return out

    def grid_values(self, grid) -> np.ndarray:
        """The ``N x N`` table ``phi(x_i, xi_j)``."""
        return self.evaluate(grid.spatial_nodes[:, None], grid.frequency_nodes[None, :])
