"""Exception types shared across the package."""


class InvalidArgumentError(ValueError):
    """An argument is outside the documented domain of an operation."""


class NumericOverflowError(ArithmeticError):
    """A numeric evaluation produced a non-finite value.

    The message names the offending node/point where applicable.
    """


class PoleProximityError(ArithmeticError):
    """An evaluation point is too close to a pole of the target function."""


class AccuracyError(RuntimeError):
    """A result cannot be produced at the requested accuracy.

    Carries diagnostics in ``details`` (e.g. a Gram condition number).
    """

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details or {}
