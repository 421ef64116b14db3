"""Exception types shared across the package."""


class FusedTLError(Exception):
    """Base class for all package errors."""


class CapacityError(FusedTLError):
    """Requested size exceeds the configured ambient dimension cap."""


class DomainError(FusedTLError, ValueError):
    """Input lies outside the domain of an operation."""


class DegenerateParameterError(FusedTLError, ZeroDivisionError):
    """A Chebyshev denominator vanishes at the chosen parameter."""


class SingularParameterError(FusedTLError, ZeroDivisionError):
    """Spectral parameters hit a pole of an R-matrix."""


class NotInSubspaceError(FusedTLError):
    """Vector is not in the image of the global projector."""


class DegeneracyError(FusedTLError):
    """Eigenspace has unexpected dimension."""
