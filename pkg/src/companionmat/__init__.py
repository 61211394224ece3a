"""Exact companion matrices, Toeplitz/Hankel similarity, Bezoutians and extensions."""
from __future__ import annotations

from .companion import Kind, companion, companion_power
from .errors import (
    ConsistencyError,
    DimensionError,
    EndpointError,
    NotCoprimeError,
    SingularMatrixError,
    StructureError,
)
from .exactmat import Matrix, PolyVec, count_mults, flip_matrix, mat_inverse
from .structured import HankelBand, ToeplitzBand

__version__ = "0.1.0"

__all__ = [
    "Kind",
    "companion",
    "companion_power",
    "Matrix",
    "PolyVec",
    "ToeplitzBand",
    "HankelBand",
    "count_mults",
    "flip_matrix",
    "mat_inverse",
    "ConsistencyError",
    "DimensionError",
    "EndpointError",
    "NotCoprimeError",
    "SingularMatrixError",
    "StructureError",
]
