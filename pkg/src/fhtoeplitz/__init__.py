"""Toeplitz eigenvalue and determinant asymptotics for Fisher-Hartwig symbols.

Formula-based predictions live in :mod:`bulk`, :mod:`gap`, :mod:`determinants`
and :mod:`slepian`; :mod:`oracle` supplies the exact dense computations they
are checked against.
"""
from .errors import (
    ConsistencyError,
    DomainError,
    FHToeplitzError,
    PreconditionError,
    UnsupportedError,
)
from .fourier import FourierSeries, fourier_coeffs
from .oracle import build_toeplitz, hermitian_eigenvalues, toeplitz_determinant
from .symbols import (
    FHDescriptor,
    SmoothUnimodalSymbol,
    TwoLevelSymbol,
    named_symbol,
    parse_symbol_config,
)

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError",
    "DomainError",
    "FHToeplitzError",
    "PreconditionError",
    "UnsupportedError",
    "FourierSeries",
    "fourier_coeffs",
    "build_toeplitz",
    "hermitian_eigenvalues",
    "toeplitz_determinant",
    "FHDescriptor",
    "SmoothUnimodalSymbol",
    "TwoLevelSymbol",
    "named_symbol",
    "parse_symbol_config",
]
