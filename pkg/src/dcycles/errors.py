"""Exception types shared by the library."""


class InvalidParameter(ValueError):
    """An argument is outside the documented domain."""


class InvalidPrime(InvalidParameter):
    pass


class BudgetExceeded(InvalidParameter):
    """Brute-force enumeration was asked to go past its size limit."""


class InternalConsistencyError(AssertionError):
    """Two independent computations of the same object disagreed.

    This indicates a bug in the library, never bad input.
    """


class TheoremViolation(AssertionError):
    """A proven statement failed on concrete data."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness or {}
