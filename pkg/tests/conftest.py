from pathlib import Path

import numpy as np
import pytest

from fionuclear import (
    Decomposition,
    FunctionExpr,
    Grid,
    PhaseFn,
    Regime,
    SampledFunction,
    SeparableSymbol,
    Side,
    sample,
)

REPO_ROOT = Path(__file__).resolve().parent.parent
CORPUS_DIR = REPO_ROOT / "scenarios" / "corpus"
FAILING_DIR = REPO_ROOT / "scenarios" / "failing"


@pytest.fixture(scope="session")
def grid() -> Grid:
    return Grid(8.0, 256)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)


def _random_gaussian_expr(rng, spatial: bool) -> FunctionExpr:
    amp = float(rng.uniform(0.4, 1.6))
    if spatial:
        center = float(rng.uniform(-1.5, 1.5))
        width = float(rng.uniform(0.6, 1.6))
    else:
        # keep frequency factors well inside the window so edge tails
        # stay under the truncation budget at every grid size in use
        center = float(rng.uniform(-0.5, 0.5))
        width = float(rng.uniform(0.6, 1.0))
    return FunctionExpr.gaussian(amp, center, width)


@pytest.fixture
def make_decomposition(grid):
    """Factory for random Gaussian-factor decompositions of a given rank."""

    def build(rng, rank, r=1.0, p1=2.0, p2=2.0, regime=Regime.LOW, grid=grid):
        pairs = []
        for _ in range(rank):
            h = sample(_random_gaussian_expr(rng, spatial=True), Side.SPATIAL, grid)
            g = sample(_random_gaussian_expr(rng, spatial=False), Side.FREQUENCY, grid)
            pairs.append((h, g))
        return Decomposition(tuple(pairs), r, p1, p2, regime)

    return build


@pytest.fixture
def make_function(grid):
    """Factory for random smooth inputs: small modulated-Gaussian mixes."""

    def build(rng, grid=grid):
        total = np.zeros(grid.size, dtype=np.complex128)
        for _ in range(int(rng.integers(1, 4))):
            expr = FunctionExpr.modulated_gaussian(
                float(rng.uniform(0.3, 1.5)),
                float(rng.uniform(-1.0, 1.0)),
                float(rng.uniform(0.7, 1.4)),
                float(rng.uniform(-2.0, 2.0)),
            )
            total = total + expr.evaluate(grid.spatial_nodes)
        return SampledFunction(grid, Side.SPATIAL, total)

    return build


@pytest.fixture
def rank1_gaussian(grid):
    """The canonical rank-1 Gaussian pair as (decomposition, symbol)."""
    h = sample(FunctionExpr.gaussian(), Side.SPATIAL, grid)
    g = sample(FunctionExpr.gaussian(), Side.FREQUENCY, grid)
    d = Decomposition(((h, g),), 1.0, 2.0, 2.0, Regime.LOW)
    return d, SeparableSymbol(d, PhaseFn.zero())
