"""Exception types shared across the package."""


class GTBoundsError(Exception):
    """Base class for all package errors."""


class DomainError(GTBoundsError, ValueError):
    """An argument is outside the mathematical domain of the function."""


class SizeLimitError(GTBoundsError, ValueError):
    """An exact computation was requested beyond the enumeration limits."""


class StructureError(GTBoundsError, ValueError):
    """A matrix does not have the shape a check requires (weights, common item)."""


class CrossoverNotFoundError(GTBoundsError, RuntimeError):
    """No delta in the search bracket reaches the t/n = 1 level."""
