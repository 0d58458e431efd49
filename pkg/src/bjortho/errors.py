"""Exception types raised across the package."""


class InvalidArgument(ValueError):
    """Bad input: wrong shape, out-of-range parameter, mismatched operands."""


class NoSupportFunctional(ValueError):
    """Requested the support functional of the zero vector."""


class UnsupportedSpace(ValueError):
    """The space kind does not meet a criterion's smoothness hypothesis."""


class DegenerateBasis(ValueError):
    """Subspace basis is numerically dependent."""


class UncertifiedSolution(RuntimeError):
    """Best-approximation solve did not pass its optimality check."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
