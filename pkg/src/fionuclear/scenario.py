"""Scenario documents: the single input format for reproducible runs.

A scenario JSON file fixes the grid, the application phase, the symbol
(pointwise product or separable factor list), the exponent data, and
optionally an input function, a seed, and output preferences.  Loading
validates against the shipped schema and the cross-field invariants the
schema cannot express, with errors naming the offending field by dotted
path.

Separable scenario symbols are plain products: their construction phase
is identically zero, so the factor list is exactly the symbol's
decomposition and the scenario's ``phase`` entry is the phase the
operator is applied with.

Random families are drawn when the scenario is built, in document order
(factor pairs first, then the input function), from one seeded
generator, so a given (scenario, seed) pair is fully reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from .errors import ParameterDomainError, ScenarioError
from .grid import FunctionExpr, Grid, SampledFunction, Side, sample
from .phase import PhaseFn
from .symbols import Decomposition, PointwiseSymbol, Regime, SeparableSymbol, Symbol

MIN_GRID_SIZE = 16


def _load_packaged_schema(name: str) -> dict:
    text = resources.files("fionuclear").joinpath(f"schema/{name}").read_text(encoding="utf-8")
    return json.loads(text)


_SCENARIO_SCHEMA = _load_packaged_schema("scenario.json")
_REPORT_SCHEMA = _load_packaged_schema("report.json")


def report_schema() -> dict:
    """The schema every JSON output document conforms to."""
    return _REPORT_SCHEMA


@dataclass(frozen=True)
class Exponents:
    r: float
    p1: float
    p2: float
    regime: Regime


@dataclass(frozen=True)
class OutputPrefs:
    format: str = "json"
    plots: bool = False
    plot_dir: str | None = None


@dataclass(frozen=True)
class Scenario:
    """Validated scenario document, not yet bound to a grid realization."""

    name: str
    half_width: float
    size: int
    phase: PhaseFn
    symbol_kind: str
    x_factor: FunctionExpr | None
    xi_factor: FunctionExpr | None
    factor_exprs: tuple
    exponents: Exponents
    input_expr: FunctionExpr
    seed: int
    outputs: OutputPrefs

    def build(self, size_override: int | None = None, seed_override: int | None = None) -> "RealizedScenario":
        """Sample every expression onto a concrete grid."""
        size = self.size if size_override is None else int(size_override)
        if size < MIN_GRID_SIZE or size % 2 != 0:
            raise ScenarioError(
                f"grid size must be even and >= {MIN_GRID_SIZE}, got {size}", field="grid.N"
            )
        grid = Grid(self.half_width, size)
        seed = self.seed if seed_override is None else int(seed_override)
        rng = np.random.default_rng(seed)

        if self.symbol_kind == "separable":
            pairs = []
            for h_expr, g_expr in self.factor_exprs:
                h = sample(h_expr, Side.SPATIAL, grid, rng)
                g = sample(g_expr, Side.FREQUENCY, grid, rng)
                pairs.append((h, g))
            e = self.exponents
            decomposition = Decomposition(tuple(pairs), e.r, e.p1, e.p2, e.regime)
            symbol: Symbol = SeparableSymbol(decomposition, PhaseFn.zero())
        else:
            xf = self.x_factor.realize(grid, Side.SPATIAL, rng)
            xif = self.xi_factor.realize(grid, Side.FREQUENCY, rng)
            decomposition = None
            symbol = PointwiseSymbol(xf, xif)

        input_function = sample(self.input_expr, Side.SPATIAL, grid, rng)
        return RealizedScenario(
            scenario=self,
            grid=grid,
            phase=self.phase,
            symbol=symbol,
            decomposition=decomposition,
            input_function=input_function,
            seed=seed,
        )


@dataclass(frozen=True)
class RealizedScenario:
    """A scenario bound to a grid, with all randomness drawn."""

    scenario: Scenario
    grid: Grid
    phase: PhaseFn
    symbol: Symbol
    decomposition: Decomposition | None
    input_function: SampledFunction
    seed: int

    @property
    def name(self) -> str:
        return self.scenario.name

    @property
    def exponents(self) -> Exponents:
        return self.scenario.exponents


def _function_expr(doc: dict, field: str) -> FunctionExpr:
    try:
        return FunctionExpr(doc["family"], tuple(doc.get("params", ())))
    except ParameterDomainError as exc:
        raise ScenarioError(str(exc), field=field) from exc


def _check_exponent_regime(e: Exponents) -> None:
    if e.regime is Regime.LOW and not (1.0 < e.p1 <= 2.0):
        raise ScenarioError(
            f"regime 'low' requires 1 < p1 <= 2 (got {e.p1:g})", field="exponents.p1"
        )
    if e.regime is Regime.HIGH and not (2.0 <= e.p1 < np.inf):
        raise ScenarioError(
            f"regime 'high' requires 2 <= p1 < inf (got {e.p1:g})", field="exponents.p1"
        )


def load_scenario(path) -> Scenario:
    """Parse, schema-validate, and invariant-check a scenario file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            f"scenario file {path} is not valid JSON: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc

    validator = jsonschema.Draft202012Validator(_SCENARIO_SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        best = jsonschema.exceptions.best_match(errors)
        field = ".".join(str(part) for part in best.absolute_path) or "(document root)"
        raise ScenarioError(f"{best.message}", field=field)

    phase_doc = doc["phase"]
    try:
        phase = PhaseFn(phase_doc["family"], tuple(phase_doc.get("params", ())))
    except ParameterDomainError as exc:
        raise ScenarioError(str(exc), field="phase.params") from exc

    sym_doc = doc["symbol"]
    if sym_doc["kind"] == "pointwise":
        x_factor = _function_expr(sym_doc["x_factor"], "symbol.x_factor")
        xi_factor = _function_expr(sym_doc["xi_factor"], "symbol.xi_factor")
        factor_exprs: tuple = ()
    else:
        x_factor = xi_factor = None
        pairs = []
        for k, pair in enumerate(sym_doc["factors"]):
            h = _function_expr(pair["h"], f"symbol.factors[{k}].h")
            g = _function_expr(pair["g"], f"symbol.factors[{k}].g")
            pairs.append((h, g))
        factor_exprs = tuple(pairs)

    e_doc = doc["exponents"]
    exponents = Exponents(
        r=float(e_doc["r"]),
        p1=float(e_doc["p1"]),
        p2=float(e_doc["p2"]),
        regime=Regime(e_doc["regime"]),
    )
    _check_exponent_regime(exponents)

    input_expr = (
        _function_expr(doc["input"], "input") if "input" in doc else FunctionExpr.gaussian()
    )
    out_doc = doc.get("outputs", {})
    outputs = OutputPrefs(
        format=out_doc.get("format", "json"),
        plots=bool(out_doc.get("plots", False)),
        plot_dir=out_doc.get("plot_dir"),
    )
    return Scenario(
        name=doc.get("name", path.stem),
        half_width=float(doc["grid"]["L"]),
        size=int(doc["grid"]["N"]),
        phase=phase,
        symbol_kind=sym_doc["kind"],
        x_factor=x_factor,
        xi_factor=xi_factor,
        factor_exprs=factor_exprs,
        exponents=exponents,
        input_expr=input_expr,
        seed=int(doc.get("seed", 0)),
        outputs=outputs,
    )
