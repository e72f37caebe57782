"""Exception hierarchy shared by all modules."""


class StructmatError(Exception):
    """Base class for every error raised by this package."""


class ArgumentError(StructmatError, ValueError):
    """Malformed input: shapes, index sets, parameter ranges."""


class CapabilityError(StructmatError):
    """The request is well-formed but exceeds a configured exhaustive limit."""


class PreconditionError(ArgumentError):
    """A mathematical hypothesis of the operation does not hold for the input."""


class SingularMatrixError(StructmatError, ArithmeticError):
    """Elimination met a pivot below tolerance.

    Attributes
    ----------
    pivot : int
        1-based index of the elimination step that failed.
    """

    def __init__(self, pivot, magnitude=0.0):
        self.pivot = pivot
        self.magnitude = magnitude
        super().__init__(f"matrix is singular to working tolerance at pivot {pivot} (|pivot|={magnitude:.3g})")


class NumericalError(StructmatError, ArithmeticError):
    """An iterative method failed to converge or a float computation broke down."""


class PoleError(NumericalError):
    def __init__(self, point):
        self.point = point
        super().__init__(f"symbol has a pole at s={point!r}")


class DegenerateDegreeError(NumericalError):
    """The Day polynomial F - lambda*G*H lost degree (leading-coefficient cancellation)."""


class ConsistencyError(StructmatError, AssertionError):
    """A closed form failed its own residual check."""
