"""Finite prelinear Hilbert algebras, their dual h-forests, products and coproducts."""

from .errors import (
    AxiomError,
    DomainError,
    HilforError,
    InternalInconsistencyError,
    MalformedInputError,
    NotASemilatticeError,
    ParseError,
    ResourceLimitError,
)
from .hilcore import Algebra, Hom, make_algebra, validate_algebra

__all__ = [
    "Algebra",
    "AxiomError",
    "DomainError",
    "HilforError",
    "Hom",
    "InternalInconsistencyError",
    "MalformedInputError",
    "NotASemilatticeError",
    "ParseError",
    "ResourceLimitError",
    "make_algebra",
    "validate_algebra",
]

__version__ = "0.1.0"
