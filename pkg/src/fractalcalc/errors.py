"""Exception hierarchy shared by every module."""


class FractalCalcError(Exception):
    """Base class for all numerical failures raised by the package."""


class DomainError(FractalCalcError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class EvaluationError(FractalCalcError):
    """A profile produced a non-finite value, or a derivative could not be formed."""


class ConvergenceError(FractalCalcError):
    """A series or quadrature failed to meet its tolerance.

    ``estimate`` carries the best value reached before giving up.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class PoleError(DomainError):
    """Gamma function evaluated at a non-positive integer."""


class SolverError(FractalCalcError):
    """A time-stepping scheme hit a singular step."""


class ShapeError(FractalCalcError, ValueError):
    """Two grid series could not be combined because their grids differ."""
