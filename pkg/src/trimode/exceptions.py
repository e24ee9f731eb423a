"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """Raised when inputs violate a documented precondition."""


class ComputationError(RuntimeError):
    """Raised when a computation cannot produce a trustworthy result."""


class NonConvergenceError(ComputationError):
    """Eigensolver failed to converge; carries the LAPACK info code."""

    def __init__(self, message, info=None):
        super().__init__(message)
        self.info = info


class NoMagicAngleError(ComputationError):
    """No parametric-resonance wavevector exists on the search interval."""
