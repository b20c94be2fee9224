"""Exception taxonomy for the toolkit."""


class BrownkitError(Exception):
    """Base class for all toolkit errors."""


class MalformedMeasureError(BrownkitError, ValueError):
    """A measure violates its invariants (mass, support, sign)."""


class DomainError(BrownkitError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NumericalDegeneracyError(BrownkitError, ArithmeticError):
    """A transform degenerated numerically (e.g. h evaluated to zero)."""


class ClassificationError(BrownkitError, ValueError):
    """Boundary classification received nonfinite data or found no root."""


class SolverFailureError(BrownkitError, RuntimeError):
    """Iteration cap reached; carries the final bracket state."""

    def __init__(self, message, bracket=None, residuals=None):
        super().__init__(message)
        self.bracket = bracket
        self.residuals = residuals


class UnsupportedMeasureError(BrownkitError, ValueError):
    """Input measure outside the supported family (degenerate ties, delta at 0)."""


class SingularityError(BrownkitError, ArithmeticError):
    """Resolvent evaluated at a singular point (s = 0 on an eigenvalue)."""


class AtomCandidateError(BrownkitError, ValueError):
    """Pointwise density requested at an atom candidate of the Brown measure."""


class GridShapeError(BrownkitError, ValueError):
    """Grids with mismatched specs were combined."""
