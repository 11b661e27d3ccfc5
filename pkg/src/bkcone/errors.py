"""Exception types shared across the package."""


class BkconeError(Exception):
    """Base class for all package errors."""


class ConfigurationError(BkconeError, ValueError):
    """Unsupported Lie type, rank, basis or malformed input."""


class PreconditionError(BkconeError, ValueError):
    """An input violates a documented precondition (e.g. non-dominant weight)."""


class InvariantViolation(BkconeError, AssertionError):
    """An internal mathematical identity failed; indicates a bug, never silenced."""
