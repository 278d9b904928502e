"""Exception hierarchy shared by every module of the package."""


class SincError(Exception):
    """Base class for errors raised by sincderiv."""


class UsageError(SincError, ValueError):
    """Bad arguments: mismatched jets, out-of-range orders, unknown ids."""


class DomainError(SincError, ValueError):
    """A point lies on or outside the open interval a map is defined on."""

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class SingularityError(SincError, ArithmeticError):
    """An elementary operation was applied outside its real domain."""

    def __init__(self, message, c0=None):
        super().__init__(message)
        self.c0 = c0


class SamplingError(SincError):
    """The sampled function returned a non-finite value at a Sinc node."""

    def __init__(self, message, k=None, t=None):
        super().__init__(message)
        self.k = k
        self.t = t


class SingularWeightError(SamplingError):
    """The weight function underflowed to zero at a Sinc node."""
