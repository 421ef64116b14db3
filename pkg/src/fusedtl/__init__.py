"""Exact computations for the fused periodic Temperley-Lieb loop model at the combinatorial point."""
from .exceptions import (
    CapacityError,
    DegeneracyError,
    DegenerateParameterError,
    DomainError,
    FusedTLError,
    NotInSubspaceError,
    SingularParameterError,
)
from .patterns import BlockStructure, LinkPattern
from .scalars import CycScalar, make_field

__version__ = "0.1.0"

__all__ = [
    "BlockStructure",
    "CapacityError",
    "CycScalar",
    "DegeneracyError",
    "DegenerateParameterError",
    "DomainError",
    "FusedTLError",
    "LinkPattern",
    "NotInSubspaceError",
    "SingularParameterError",
    "make_field",
]
