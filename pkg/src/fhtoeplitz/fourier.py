"""Fourier analysis of functions on the unit circle and Wiener-Hopf factors."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError

DEFAULT_GRID = 8192
# above this many (point, mode) pairs evaluation switches to Horner
_DIRECT_EVAL_LIMIT = 1 << 18


def circle_angles(size: int = DEFAULT_GRID) -> np.ndarray:
    """Equispaced angles 2*pi*l/size, l = 0..size-1."""
    return 2.0 * np.pi * np.arange(size) / size


@dataclass(frozen=True)
class CircleGrid:
    """Samples of a function at the equispaced angles ``2*pi*l/size``."""

    samples: np.ndarray

    def __post_init__(self):
        size = len(self.samples)
        if size < 4 or size & (size - 1):
            raise PreconditionError(f"grid size must be a power of two >= 4, got {size}")

    @property
    def size(self) -> int:
        return len(self.samples)

    @classmethod
    def from_function(cls, func, size: int = DEFAULT_GRID) -> "CircleGrid":
        return cls(np.asarray(func(circle_angles(size))))


@dataclass(frozen=True)
class FourierSeries:
    """Truncated Fourier series sum_{|k|<=K} c_k e^{ik theta}.

    ``coeffs[k + K]`` holds c_k.  Indexing with an integer outside [-K, K]
    returns 0.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or len(c) % 2 == 0:
            raise PreconditionError("coefficient array must be 1-D of odd length 2K+1")
        object.__setattr__(self, "coeffs", c)

    @property
    def K(self) -> int:
        return (len(self.coeffs) - 1) // 2

    def __getitem__(self, k: int) -> complex:
        K = self.K
        if -K <= k <= K:
            return complex(self.coeffs[k + K])
        return 0j

    def take(self, ks) -> np.ndarray:
        """Coefficients for an integer array of indices (zero outside range)."""
        ks = np.asarray(ks)
        out = np.zeros(ks.shape, dtype=complex)
        inside = np.abs(ks) <= self.K
        out[inside] = self.coeffs[ks[inside] + self.K]
        return out

    @property
    def positive(self) -> np.ndarray:
        """c_1, ..., c_K."""
        return self.coeffs[self.K + 1:]

    @property
    def negative(self) -> np.ndarray:
        """c_{-1}, ..., c_{-K}."""
        return self.coeffs[self.K - 1::-1][: self.K] if self.K else self.coeffs[:0]

    def __call__(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        if theta.size * self.K <= _DIRECT_EVAL_LIMIT:
            k = np.arange(1, self.K + 1)
            e = np.exp(1j * np.multiply.outer(theta, k))
            return self.coeffs[self.K] + e @ self.positive + np.conj(e) @ self.negative
        z = np.exp(1j * theta)
        # Horner in z and 1/z
        pos = np.zeros_like(z)
        for c in self.positive[::-1]:
            pos = (pos + c) * z
        neg = np.zeros_like(z)
        zi = np.conj(z)
        for c in self.negative[::-1]:
            neg = (neg + c) * zi
        return self.coeffs[self.K] + pos + neg

    def tail_mass(self) -> float:
        """sum of |c_k| over K/2 < |k| <= K; a proxy for truncation error."""
        K = self.K
        idx = np.abs(np.arange(-K, K + 1)) > K // 2
        return float(np.sum(np.abs(self.coeffs[idx])))

    def is_real_symbol(self, tol: float = 1e-12) -> bool:
        return bool(np.allclose(self.negative, np.conj(self.positive), atol=tol, rtol=0))


def coeffs_from_fft(samples: np.ndarray, K: int, axis: int = -1) -> np.ndarray:
    """Raw discrete Fourier coefficients c_{-K..K} along ``axis``."""
    samples = np.asarray(samples)
    size = samples.shape[axis]
    c = np.fft.fft(samples, axis=axis) / size
    idx = np.arange(-K, K + 1) % size
    return np.take(c, idx, axis=axis)


def fourier_coeffs(grid: CircleGrid, K: int) -> FourierSeries:
    """Discrete Fourier coefficients c_k, |k| <= K, of the sampled function.

    Exact up to rounding when the sampled function has bandwidth <= K.
    """
    if K < 0:
        raise PreconditionError("K must be nonnegative")
    if grid.size < 4 * K:
        raise PreconditionError(f"grid of size {grid.size} too small for K={K}; need >= {4 * K}")
    return FourierSeries(coeffs_from_fft(grid.samples, K))


def log_wiener_hopf(v: FourierSeries, z) -> tuple[complex, complex]:
    """(log b_+(z), log b_-(z)) = (sum_{k>=1} V_k z^k, sum_{k<=-1} V_k z^k)."""
    z = complex(z)
    k = np.arange(1, v.K + 1)
    lp = complex(np.sum(v.positive * z**k)) if v.K else 0j
    lm = complex(np.sum(v.negative * z ** (-k))) if v.K else 0j
    return lp, lm


def wiener_hopf_eval(v: FourierSeries, z) -> tuple[complex, complex]:
    """Wiener-Hopf factors (b_+(z), b_-(z)) of e^V, so e^V = b_+ e^{V_0} b_-."""
    lp, lm = log_wiener_hopf(v, z)
    return complex(np.exp(lp)), complex(np.exp(lm))


def szego_sum(v: FourierSeries) -> tuple[complex, float]:
    """sum_{k>=1} k V_k V_{-k} and the magnitude of its terms beyond K/2."""
    k = np.arange(1, v.K + 1)
    terms = k * v.positive * v.negative
    return complex(np.sum(terms)), float(np.sum(np.abs(terms[k > v.K // 2])))


def weighted_energy(v: FourierSeries) -> tuple[float, float]:
    """sum_{k>=1} k |V_k|^2 and its tail beyond K/2."""
    k = np.arange(1, v.K + 1)
    terms = k * np.abs(v.positive) ** 2
    return float(np.sum(terms)), float(np.sum(terms[k > v.K // 2]))
