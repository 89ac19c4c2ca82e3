"""Exact finite-n computations: Toeplitz matrices, spectra and determinants.

Everything in the asymptotic modules is judged against these.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import DomainError, PreconditionError
from .fourier import FourierSeries

MAX_EIG_N = 8192
MAX_DET_N = 2048


@dataclass(frozen=True, eq=False)
class ToeplitzMatrix:
    """T_n(f) = (f_{j-k})_{j,k=0}^{n-1}, stored through its symbol coefficients."""

    n: int
    coeffs: FourierSeries

    def dense(self) -> np.ndarray:
        K = self.coeffs.K
        c = self.coeffs.coeffs
        col = c[K:K + self.n]          # f_0, f_1, ..., f_{n-1}
        row = c[K::-1][: self.n]       # f_0, f_{-1}, ..., f_{-(n-1)}
        return sla.toeplitz(col, row)

    def is_hermitian(self, tol: float = 1e-13) -> bool:
        c = self.coeffs
        k = np.arange(0, self.n)
        scale = max(1.0, float(np.max(np.abs(c.take(k)))))
        return bool(np.all(np.abs(c.take(-k) - np.conj(c.take(k))) <= tol * scale))


@dataclass(frozen=True)
class ExactSpectrum:
    n: int
    eigenvalues: np.ndarray


@dataclass(frozen=True)
class LogDet:
    """Determinant in log-polar form: det = exp(log_magnitude + i*phase)."""

    log_magnitude: float
    phase: float

    @property
    def log(self) -> complex:
        return complex(self.log_magnitude, self.phase)

    @property
    def is_zero(self) -> bool:
        return self.log_magnitude == -math.inf


def build_toeplitz(coeffs: FourierSeries, n: int) -> ToeplitzMatrix:
    if n < 1:
        raise PreconditionError("n must be positive")
    if coeffs.K < n - 1:
        raise PreconditionError(f"need coefficients up to |k| = {n - 1}, have {coeffs.K}")
    return ToeplitzMatrix(n, coeffs)


def hermitian_eigenvalues(T: ToeplitzMatrix) -> ExactSpectrum:
    """All eigenvalues of a Hermitian Toeplitz matrix, ascending (LAPACK eigvalsh)."""
    if T.n > MAX_EIG_N:
        raise PreconditionError(f"n = {T.n} exceeds the dense size cap {MAX_EIG_N}")
    if not T.is_hermitian():
        raise DomainError("Toeplitz matrix is not Hermitian (symbol not real-valued)")
    A = T.dense()
    if np.allclose(A.imag, 0.0):
        A = A.real
    return ExactSpectrum(T.n, sla.eigvalsh(A, check_finite=False))


def tridiag_closed_form(n: int, diag: float, offdiag: float) -> ExactSpectrum:
    """Spectrum of the symmetric tridiagonal Toeplitz matrix: diag + 2 offdiag cos(j pi/(n+1))."""
    j = np.arange(1, n + 1)
    return ExactSpectrum(n, np.sort(diag + 2.0 * offdiag * np.cos(j * np.pi / (n + 1))))


def log_det_dense(A: np.ndarray) -> LogDet:
    """log det of a square matrix by LU with partial pivoting."""
    with warnings.catch_warnings():
        # an exactly zero pivot is reported through the -inf flag instead
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(A, check_finite=False)
    d = np.diag(lu)
    if np.any(d == 0):
        return LogDet(-math.inf, 0.0)
    swaps = np.count_nonzero(piv != np.arange(len(piv)))
    logmag = float(np.sum(np.log(np.abs(d))))
    phase = float(np.sum(np.angle(d))) + math.pi * (swaps % 2)
    return LogDet(logmag, math.remainder(phase, 2 * math.pi))


def toeplitz_determinant(coeffs: FourierSeries, n: int) -> LogDet:
    """D_n(f) = det T_n(f) in log-polar form."""
    if n > MAX_DET_N:
        raise PreconditionError(f"n = {n} exceeds the determinant size cap {MAX_DET_N}")
    return log_det_dense(build_toeplitz(coeffs, n).dense())


def raise_beta_coeffs(fminus: FourierSeries, theta_j0: float) -> FourierSeries:
    """Coefficients of F = -(z / z_{j0}) F^-, the symbol with beta_{j0} raised by one."""
    # F_k = -z_{j0}^{-1} F^-_{k-1}; the result has K + 1 and F_{-K-1} = F_{-K} = 0
    c = np.concatenate([np.zeros(2, dtype=complex), fminus.coeffs])
    return FourierSeries(-np.exp(-1j * theta_j0) * c)


def phi_hat_zero_exact(F: FourierSeries, Fminus: FourierSeries, theta_j0: float, n: int) -> complex:
    """Phi_hat_n(0) = D_n(F^-) / (z_{j0}^n D_n(F)) from two exact determinants."""
    dF = toeplitz_determinant(F, n)
    if dF.is_zero:
        raise ZeroDivisionError("D_n(F) vanishes")
    dFm = toeplitz_determinant(Fminus, n)
    if dFm.is_zero:
        return 0j
    return complex(np.exp(dFm.log - dF.log - 1j * n * theta_j0))
