"""Typed exceptions raised across the package.

Every data-degeneracy or misuse condition has its own class so callers
(and the command-line front end, which maps them to exit codes) can react
without string matching.
"""


class VarentropyError(Exception):
    """Base class for all package-specific errors."""


class SampleValidationError(VarentropyError, ValueError):
    """A sample matrix violates its invariants (shape, finiteness)."""


class EmptySampleError(SampleValidationError):
    """Fewer than two points: nearest-neighbor distances are undefined."""


class DuplicatePointsError(SampleValidationError):
    """Coincident points produce a zero nearest-neighbor distance.

    Attributes
    ----------
    pairs : list of (int, int)
        Offending index pairs (i, j) with distance exactly zero.
    """

    def __init__(self, pairs):
        self.pairs = list(pairs)
        shown = ", ".join(f"({i}, {j})" for i, j in self.pairs[:10])
        more = "" if len(self.pairs) <= 10 else f" and {len(self.pairs) - 10} more"
        super().__init__(
            f"sample contains coincident points at index pairs {shown}{more}; "
            "remove them or opt into jittering"
        )


class NonpositiveDistanceError(VarentropyError, ValueError):
    """A log-transformed statistic was requested for a distance <= 0."""


class UnsupportedOrderError(VarentropyError, ValueError):
    """Moment order outside the implemented set."""


class InvalidParamsError(VarentropyError, ValueError):
    """Distribution parameters violate their constraints."""


class DimensionMismatchError(VarentropyError, ValueError):
    """A point's dimension does not match the distribution's."""


class UnsupportedQuadratureDimensionError(VarentropyError, ValueError):
    """Quadrature oracle requested for a dimension it does not cover."""


class QuadratureNonconvergenceError(VarentropyError, RuntimeError):
    """Adaptive quadrature failed to reach the requested accuracy."""


class BudgetTooSmallError(VarentropyError, ValueError):
    """Monte Carlo budget below the trustworthy minimum."""


class NegativeArgumentError(VarentropyError, ValueError):
    """Gauge function evaluated at a negative argument."""


class TooFewPointsError(VarentropyError, ValueError):
    """Not enough observations for the requested procedure."""


class CalibrationBudgetTooSmallError(VarentropyError, ValueError):
    """Monte Carlo calibration with too few replications."""


class ConfigError(VarentropyError, ValueError):
    """A configuration file or spec string failed to parse."""
