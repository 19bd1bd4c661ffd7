"""Exception taxonomy shared by all modules.

The CLI maps these onto its exit-code contract: validation-type errors
exit with 2, truncation-budget failures with 3, eigen/SVD solver
failures with 4.
"""


class FioNuclearError(Exception):
    """Base class for all errors raised by this package."""


class ParameterDomainError(FioNuclearError):
    """A parameter lies outside its admissible domain."""


class SideMismatchError(FioNuclearError):
    """A sampled function lives on the wrong side (spatial vs frequency)."""


class GridMismatchError(FioNuclearError):
    """Two objects that must share one grid do not."""


class OutOfDomainError(FioNuclearError):
    """An evaluation point falls outside the grid's coverage."""


class RegimeError(FioNuclearError):
    """Exponents are inconsistent with the requested decomposition regime."""


class PhaseRegimeError(FioNuclearError):
    """An operation is only offered for the Kohn-Nirenberg phase."""


class TruncationError(FioNuclearError):
    """The integrand does not decay within the truncated domain.

    Carries the estimated tail contribution so callers can report how
    badly the decay budget was missed.
    """

    def __init__(self, message, tail_estimate, budget):
        super().__init__(message)
        self.tail_estimate = float(tail_estimate)
        self.budget = float(budget)


class SolverError(FioNuclearError):
    """A dense eigenvalue or singular-value solver failed to converge."""


class ScenarioError(FioNuclearError):
    """A scenario file failed to parse or violates the schema/invariants.

    ``field`` holds a dotted path to the offending field when known,
    e.g. ``"grid.N"``.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field
