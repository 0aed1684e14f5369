class LambdaPtError(Exception):
    """Base class for every error raised by the simulation library."""


class SingularMatrix(LambdaPtError):
    """A matrix could not be inverted (|det| at or below the singularity cutoff)."""


class NoConvergence(LambdaPtError):
    """Root polishing did not reach the residual target."""


class NotHermitian(LambdaPtError):
    """A Hermitian input was required."""


class InvalidParams(LambdaPtError):
    """Physical parameters violate a model invariant."""


class DegenerateCoupling(LambdaPtError):
    """Zero coupling makes the PT Hamiltonian diagonal."""


class ExceptionalPointError(LambdaPtError):
    """Eigenvectors coalesce; the Hamiltonian is not diagonalizable."""


class FrameMismatch(LambdaPtError):
    """A trajectory is not in the frame the operation expects."""


class StepOverflow(LambdaPtError):
    """An integrated amplitude exceeded the overflow guard."""


class ConfigError(LambdaPtError):
    """A run configuration could not be read or validated."""
