"""Exception hierarchy; each class maps onto one CLI exit code."""


class SGroverError(Exception):
    exit_code = 5


class ComplexError(SGroverError, ValueError):
    """Malformed input or a complex violating purity/connectivity."""

    exit_code = 2


class RangeError(SGroverError, ValueError):
    """Dimension or parameter outside the range where an object is defined."""

    exit_code = 3


class PreconditionError(SGroverError, ValueError):
    """A required eigenfunction or subspace condition is not available."""

    exit_code = 4


class NumericError(SGroverError, ArithmeticError):
    exit_code = 5
