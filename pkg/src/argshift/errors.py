"""Exception hierarchy shared across the package."""


class ArgshiftError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(ArgshiftError):
    """Unsupported algebra type, rank out of range, or invalid campaign settings."""


class ModeMismatchError(ArgshiftError):
    """Exact and floating-point operands were mixed in one computation."""


class NonRegularError(ArgshiftError):
    """An element required to be regular failed the regularity test."""


class RealizationError(ArgshiftError):
    """An internal consistency check on the realization failed.

    Raised when a matrix cannot be re-expanded over the defining basis, or
    when a construction identity that must hold exactly (triple brackets,
    grading, kernel dimensions) fails to close.  This always indicates an
    internal bug or a severely corrupted input, never a legitimate runtime
    condition.
    """


class SamplingError(ArgshiftError):
    """Rejection sampling exhausted its retry budget."""


class SolverError(ArgshiftError):
    """The slice-orbit intersection solver failed to converge or to agree
    across independent starts."""
