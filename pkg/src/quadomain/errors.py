"""Exception hierarchy.

``ValidationError`` subclasses signal bad input (CLI exit status 1);
``NumericalError`` subclasses signal a computation that could not meet
its accuracy contract (CLI exit status 2).
"""


class QuadomainError(Exception):
    pass


class ValidationError(QuadomainError, ValueError):
    pass


class DomainError(ValidationError):
    """Argument at or too near a singular point of the function."""


class ParameterError(ValidationError):
    """Shape or map parameter outside its admissible range."""


class PathError(ValidationError):
    """Evaluation point too close to an integration contour or cut."""


class NumericalError(QuadomainError, ArithmeticError):
    pass


class ResolutionError(NumericalError):
    """Sampling grid too coarse for the requested accuracy."""


class BranchError(NumericalError):
    """Branch bookkeeping failed (contour image did not close, sign mismatch)."""


class ExtrapolationError(NumericalError):
    pass


class ConvergenceError(NumericalError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class OutOfFamilyError(NumericalError):
    pass


class CuspBracketError(NumericalError):
    pass


class ResolutionWarning(UserWarning):
    pass
