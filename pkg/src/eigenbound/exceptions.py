"""Exception types shared across the package.

Argument and precondition violations raise ValueError (or the GeometryError /
UnsupportedError subclasses below) and map to CLI exit code 2; runtime failures
of numerical procedures raise NumericError and map to exit code 3.
"""


class GeometryError(ValueError):
    """Invalid or degenerate geometric input (bad polygon, infeasible LP)."""


class UnsupportedError(ValueError):
    """Requested combination is outside the supported problem class."""


class NumericError(RuntimeError):
    """A numerical procedure failed to converge or to bracket a root."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
