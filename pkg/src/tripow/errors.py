"""Exception hierarchy shared by every tripow module."""


class TriPowError(Exception):
    """Base class for all library errors."""


class InputError(TriPowError, ValueError):
    """Malformed or out-of-range input."""


class ParseError(InputError):
    """Text could not be parsed; carries an optional (row, col) position."""

    def __init__(self, message, row=None, col=None):
        if row is not None:
            message = f"row {row}, column {col}: {message}"
        super().__init__(message)
        self.row = row
        self.col = col


class ShapeError(InputError):
    """Matrix is not triangular in the declared orientation, or is ragged."""


class DomainError(TriPowError, ArithmeticError):
    """Operation undefined for the given values (e.g. 0 to a negative power)."""


class SingularityError(DomainError):
    """Matrix has a zero on its diagonal where an inverse is needed."""


class PoleError(DomainError):
    """Rational function has a pole at zero."""


class DistinctnessError(TriPowError, ValueError):
    """Diagonal entries are not pairwise distinct."""
