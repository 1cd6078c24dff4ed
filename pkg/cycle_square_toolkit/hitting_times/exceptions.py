"""Exception hierarchy shared by every hitting_times module."""


class CycleSquareError(Exception):
    """Base class for all errors raised by the hitting_times package."""


class UnsupportedN(CycleSquareError, ValueError):
    """Raised when the cycle length is below the supported minimum (N >= 5)."""

    def __init__(self, n: int, minimum: int = 5):
        self.n = n
        self.minimum = minimum
        super().__init__(f"N must be >= {minimum} (got N={n})")


class VertexOutOfRange(CycleSquareError, ValueError):
    """Raised when a vertex label falls outside the range an operation accepts."""


class IndexOutOfRange(CycleSquareError, IndexError):
    """Raised when a 1-based matrix index falls outside 1..floor(N/2)."""


class IrrationalResult(CycleSquareError, ArithmeticError):
    """Raised when a Q(sqrt5) value that should be rational keeps a sqrt5 part."""


class NonIntegerResult(CycleSquareError, ArithmeticError):
    """Raised when a counting formula does not collapse to an integer."""


class SingularMatrix(CycleSquareError, ArithmeticError):
    """Raised by the elimination oracles when no nonzero pivot exists."""


class UnknownIdentity(CycleSquareError, KeyError):
    """Raised for a Fibonacci identity id outside the registry."""


class ConfigInvalid(CycleSquareError, ValueError):
    """Raised when a simulation configuration fails validation."""


class TruncationWarning(UserWarning):
    """Emitted when Monte Carlo trials hit the step cap and are excluded."""
