"""Exception types raised across the package."""


class FHToeplitzError(Exception):
    """Base class for all package errors."""


class DomainError(FHToeplitzError, ValueError):
    """Argument outside the region where a formula is defined."""


class PreconditionError(FHToeplitzError, ValueError):
    """Input data insufficient for the requested computation."""


class UnsupportedError(FHToeplitzError, ValueError):
    """Valid input that the requested operation does not handle."""


class ConsistencyError(FHToeplitzError, RuntimeError):
    """An internal numerical check failed (e.g. lost monotonicity)."""
