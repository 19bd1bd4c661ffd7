"""Uniform discretization of a truncated line and functions sampled on it.

The spatial domain is ``[-L, L)`` with ``N`` equispaced nodes
``x_i = -L + i * dx``, ``dx = 2L/N``.  The matching frequency nodes are
``xi_j = j / (2L)`` for ``j = -N/2 .. N/2 - 1``, so that
``dx * dxi * N == 1``: the discrete Fourier sum on these nodes is an
exactly invertible quadrature of the continuous transform.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import OutOfDomainError, ParameterDomainError


class Side(enum.Enum):
    """Which axis a sampled function lives on."""

    SPATIAL = "spatial"
    FREQUENCY = "frequency"


@dataclass(frozen=True)
class Grid:
    """Reciprocal pair of uniform node sets on ``[-L, L)``.

    Parameters
    ----------
    half_width : float
        Positive half-width ``L`` of the spatial domain.
    size : int
        Number of nodes ``N`` on each side; must be even and >= 2.
    """

    half_width: float
    size: int

    def __post_init__(self):
        L = float(self.half_width)
        if not (np.isfinite(L) and L > 0):
            raise ParameterDomainError(f"grid half_width must be positive and finite, got {self.half_width}")
        N = self.size
        if not isinstance(N, (int, np.integer)) or isinstance(N, bool):
            raise ParameterDomainError(f"grid size must be an integer, got {self.size!r}")
        N = int(N)
        if N < 2 or N % 2 != 0:
            raise ParameterDomainError(f"grid size must be even and >= 2, got {N}")
        object.__setattr__(self, "half_width", L)
        object.__setattr__(self, "size", N)

    @property
    def dx(self) -> float:
        return 2.0 * self.half_width / self.size

    @property
    def dxi(self) -> float:
        return 1.0 / (2.0 * self.half_width)

    @cached_property
    def spatial_nodes(self) -> np.ndarray:
        x = -self.half_width + self.dx * np.arange(self.size)
        x.flags.writeable = False
        return x

    @cached_property
    def frequency_nodes(self) -> np.ndarray:
        xi = np.arange(-(self.size // 2), self.size // 2) / (2.0 * self.half_width)
        xi.flags.writeable = False
        return xi

    def nodes(self, side: Side) -> np.ndarray:
        return self.spatial_nodes if side is Side.SPATIAL else self.frequency_nodes

    def spacing(self, side: Side) -> float:
        return self.dx if side is Side.SPATIAL else self.dxi

    def contains(self, side: Side, t) -> np.ndarray:
        """Whether ``t`` falls inside the half-open nearest-node coverage."""
        nodes = self.nodes(side)
        delta = self.spacing(side)
        t = np.asarray(t, dtype=float)
        return (t >= nodes[0] - 0.5 * delta) & (t < nodes[-1] + 0.5 * delta)

    def nearest_index(self, side: Side, t):
        """Index of the node closest to ``t``; raises outside the coverage."""
        inside = self.contains(side, t)
        if not np.all(inside):
            bad = np.atleast_1d(np.asarray(t, dtype=float))[~np.atleast_1d(inside)]
            raise OutOfDomainError(
                f"point {bad.flat[0]:g} outside the {side.value} coverage of grid "
                f"(L={self.half_width:g}, N={self.size})"
            )
        nodes = self.nodes(side)
        idx = np.rint((np.asarray(t, dtype=float) - nodes[0]) / self.spacing(side)).astype(int)
        return np.clip(idx, 0, self.size - 1)


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Complex samples of a function on one side of a grid."""

    grid: Grid
    side: Side
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.complex128, copy=True).reshape(-1)
        if vals.shape[0] != self.grid.size:
            raise ParameterDomainError(
                f"sampled function needs {self.grid.size} values, got {vals.shape[0]}"
            )
        if not np.all(np.isfinite(vals.real) & np.isfinite(vals.imag)):
            raise ParameterDomainError("sampled function values must all be finite")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes(self.side)

    @property
    def spacing(self) -> float:
        return self.grid.spacing(self.side)

    def __add__(self, other: "SampledFunction") -> "SampledFunction":
        self._check_compatible(other)
        return SampledFunction(self.grid, self.side, self.values + other.values)

    def __sub__(self, other: "SampledFunction") -> "SampledFunction":
        self._check_compatible(other)
        return SampledFunction(self.grid, self.side, self.values - other.values)

    def __mul__(self, scalar) -> "SampledFunction":
        return SampledFunction(self.grid, self.side, self.values * complex(scalar))

    __rmul__ = __mul__

    def _check_compatible(self, other):
        if self.grid != other.grid or self.side is not other.side:
            raise ParameterDomainError("sampled functions must share grid and side")


# arity and meaning of the parameter tuple, per family
_ARITY = {
    "gaussian": "amp, center, width (width > 0)",
    "indicator": "lo, hi, amp (lo < hi)",
    "poly_gaussian": "c0, c1, ... (polynomial coefficients, ascending powers)",
    "modulated_gaussian": "amp, center, width, mod_freq",
    "trig_poly": "freq, re, im triples",
    "random_bandlimited": "n_modes, max_mode (integers, realized with an RNG)",
    "one": "",
    "zero": "",
}


@dataclass(frozen=True)
class FunctionExpr:
    """Member of the closed parametric family of test functions.

    Families
    --------
    gaussian ``(amp, center, width)``
        ``amp * exp(-pi ((t-center)/width)^2)``.
    indicator ``(lo, hi, amp)``
        ``amp`` strictly inside ``(lo, hi)``, ``amp/2`` at the endpoints,
        zero outside.  The half-weight endpoints make on-node Riemann
        sums of the indicator exact (trapezoid counting).
    poly_gaussian ``(c0, c1, ...)``
        ``(c0 + c1 t + ...) * exp(-pi t^2)``; covers Hermite-type factors.
    modulated_gaussian ``(amp, center, width, mod_freq)``
        gaussian times ``exp(2 pi i mod_freq t)``.
    trig_poly ``(f1, re1, im1, f2, re2, im2, ...)``
        ``sum_m (re_m + i im_m) exp(2 pi i f_m t)``.
    random_bandlimited ``(n_modes, max_mode)``
        placeholder drawn into a concrete ``trig_poly`` by
        :meth:`realize`; the mode frequencies land on nodes of the
        conjugate side so the transform has compact support.
    one, zero
        constants.
    """

    family: str
    params: tuple = ()

    def __post_init__(self):
        if self.family not in _ARITY:
            raise ParameterDomainError(
                f"unknown function family {self.family!r}; known: {sorted(_ARITY)}"
            )
        params = tuple(float(p) for p in self.params)
        object.__setattr__(self, "params", params)
        if not all(np.isfinite(params)):
            raise ParameterDomainError(f"{self.family} parameters must be finite")
        n = len(params)
        fam = self.family
        if fam == "gaussian" and (n != 3 or params[2] <= 0):
            raise ParameterDomainError(f"gaussian expects ({_ARITY[fam]}), got {params}")
        if fam == "indicator" and (n != 3 or params[0] >= params[1]):
            raise ParameterDomainError(f"indicator expects ({_ARITY[fam]}), got {params}")
        if fam == "poly_gaussian" and n < 1:
            raise ParameterDomainError("poly_gaussian expects at least one coefficient")
        if fam == "modulated_gaussian" and (n != 4 or params[2] <= 0):
            raise ParameterDomainError(f"modulated_gaussian expects ({_ARITY[fam]}), got {params}")
        if fam == "trig_poly" and (n == 0 or n % 3 != 0):
            raise ParameterDomainError("trig_poly expects (freq, re, im) triples")
        if fam == "random_bandlimited":
            if n != 2 or params[0] < 1 or params[1] < 0 or any(p != int(p) for p in params):
                raise ParameterDomainError(
                    f"random_bandlimited expects integer ({_ARITY[fam]}), got {params}"
                )
        if fam in ("one", "zero") and n != 0:
            raise ParameterDomainError(f"{fam} takes no parameters")

    # -- convenience constructors -------------------------------------
    @classmethod
    def gaussian(cls, amp=1.0, center=0.0, width=1.0):
        return cls("gaussian", (amp, center, width))

    @classmethod
    def indicator(cls, lo, hi, amp=1.0):
        return cls("indicator", (lo, hi, amp))

    @classmethod
    def poly_gaussian(cls, *coeffs):
        return cls("poly_gaussian", tuple(coeffs))

    @classmethod
    def modulated_gaussian(cls, amp=1.0, center=0.0, width=1.0, mod_freq=0.0):
        return cls("modulated_gaussian", (amp, center, width, mod_freq))

    @classmethod
    def one(cls):
        return cls("one")

    @classmethod
    def zero(cls):
        return cls("zero")

    @classmethod
    def random_bandlimited(cls, n_modes, max_mode):
        return cls("random_bandlimited", (n_modes, max_mode))

    @property
    def needs_rng(self) -> bool:
        return self.family == "random_bandlimited"

    def realize(self, grid: Grid, side: Side, rng: np.random.Generator) -> "FunctionExpr":
        """Draw a concrete ``trig_poly`` from a ``random_bandlimited`` placeholder."""
        if not self.needs_rng:
            return self
        n_modes, max_mode = int(self.params[0]), int(self.params[1])
        if max_mode > grid.size // 2 - 1:
            raise ParameterDomainError(
                f"max_mode {max_mode} exceeds the grid's mode range (N/2 - 1 = {grid.size // 2 - 1})"
            )
        # node frequencies of the conjugate side keep the transform on-grid
        conj_spacing = grid.dxi if side is Side.SPATIAL else grid.dx
        modes = rng.integers(-max_mode, max_mode + 1, size=n_modes)
        coeffs = rng.standard_normal(n_modes) + 1j * rng.standard_normal(n_modes)
        flat = []
        for k, c in zip(modes, coeffs):
            flat.extend((k * conj_spacing, c.real, c.imag))
        return FunctionExpr("trig_poly", tuple(flat))

    def evaluate(self, t) -> np.ndarray:
        """Evaluate the closed form at ``t`` (scalar or array), complex-valued."""
        t = np.asarray(t, dtype=float)
        fam, p = self.family, self.params
        if fam == "gaussian":
            amp, c, w = p
            return amp * np.exp(-np.pi * ((t - c) / w) ** 2) + 0j
        if fam == "indicator":
            lo, hi, amp = p
            inner = ((t > lo) & (t < hi)).astype(float)
            edge = 0.5 * ((t == lo) | (t == hi)).astype(float)
            return amp * (inner + edge) + 0j
        if fam == "poly_gaussian":
            return np.polynomial.polynomial.polyval(t, p) * np.exp(-np.pi * t**2) + 0j
        if fam == "modulated_gaussian":
            amp, c, w, freq = p
            env = amp * np.exp(-np.pi * ((t - c) / w) ** 2)
            return env * np.exp(2j * np.pi * freq * t)
        if fam == "trig_poly":
            out = np.zeros(np.shape(t), dtype=np.complex128)
            for i in range(0, len(p), 3):
                freq, re, im = p[i : i + 3]
                out += (re + 1j * im) * np.exp(2j * np.pi * freq * t)
            return out
        if fam == "one":
            return np.ones(np.shape(t), dtype=np.complex128)
        if fam == "zero":
            return np.zeros(np.shape(t), dtype=np.complex128)
        raise ParameterDomainError(
            f"{fam} must be realized with an RNG before evaluation (see FunctionExpr.realize)"
        )


def sample(expr: FunctionExpr, side: Side, grid: Grid, rng: np.random.Generator | None = None) -> SampledFunction:
    """Sample a parametric function on the requested side of a grid."""
    if expr.needs_rng:
        if rng is None:
            raise ParameterDomainError(f"{expr.family} requires an RNG to sample")
        expr = expr.realize(grid, side, rng)
    return SampledFunction(grid, side, expr.evaluate(grid.nodes(side)))
