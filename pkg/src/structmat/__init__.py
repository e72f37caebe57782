"""Structured-matrix laboratory.

Exact and floating-point tests for matrix classes defined by minors
(P, GKK, totally nonnegative, oscillatory), eigenvalue monotonicity, a
Toeplitz Hessenberg family that separates those classes, Toeplitz limit
spectra, and bounded-invertibility experiments.
"""
from .core import as_matrix, det, inverse, load_matrix, minor, p_norm, save_matrix, solve
from .exceptions import (
    ArgumentError,
    CapabilityError,
    ConsistencyError,
    DegenerateDegreeError,
    NumericalError,
    PoleError,
    PreconditionError,
    SingularMatrixError,
    StructmatError,
)
from .reports import ClassReport, Witness

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "CapabilityError",
    "ClassReport",
    "ConsistencyError",
    "DegenerateDegreeError",
    "NumericalError",
    "PoleError",
    "PreconditionError",
    "SingularMatrixError",
    "StructmatError",
    "Witness",
    "as_matrix",
    "det",
    "inverse",
    "load_matrix",
    "minor",
    "p_norm",
    "save_matrix",
    "solve",
]
