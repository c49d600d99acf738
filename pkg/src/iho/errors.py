"""Exception and warning types shared across the toolkit."""


class ConvergenceError(ArithmeticError):
    """A series or iteration failed to converge.

    The partial result (if any) is kept on ``partial`` so callers can
    inspect how far the computation got.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class DomainError(ValueError):
    """Argument outside the domain of a function (poles, focal times, ...)."""


class SingularityError(ArithmeticError):
    """The scale function reached zero inside the requested interval."""

    def __init__(self, message, t_cross):
        super().__init__(message)
        self.t_cross = t_cross


class GridMismatchError(ValueError):
    pass


class CoverageWarning(UserWarning):
    """The spatial or spectral grid does not fully cover the field."""


class ResolutionWarning(UserWarning):
    """Grid spacing is too coarse for the requested finite differences."""
