"""Spin-source gauge potentials, Aharonov-Bohm style phases and verification tools."""

from .errors import (
    DegenerateInputError,
    DomainError,
    NodeError,
    PathError,
    RejectedBranchError,
    SingularityError,
    SpinabError,
    UsageError,
)
from .qalgebra import DEFAULT_UNITS, UnitConventions

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_UNITS",
    "DegenerateInputError",
    "DomainError",
    "NodeError",
    "PathError",
    "RejectedBranchError",
    "SingularityError",
    "SpinabError",
    "UnitConventions",
    "UsageError",
]
