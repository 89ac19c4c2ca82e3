"""Complex log-Gamma, the continuous argument of Gamma on Re z = 1/2, and Barnes G.

``log_gamma`` is the analytic continuation of log Gamma from the positive real
axis (branch cut on the negative real axis only), so its imaginary part is
continuous along vertical lines.  ``log_barnes_g`` uses the same convention and
therefore satisfies ``log G(z+1) = log Gamma(z) + log G(z)`` exactly, not just
modulo 2*pi*i.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import special as sp

from .errors import DomainError

# zeta'(-1) = 1/12 - ln(Glaisher's constant)
_ZETA_PRIME_M1 = -0.16542114370045092921

_SHIFT_RADIUS = 20.0
_N_TERMS = 12
# B_{2k+2} / (4 k (k+1)),  k = 1.._N_TERMS
_BARNES_COEFFS = np.array(
    [sp.bernoulli(2 * k + 2)[-1] / (4.0 * k * (k + 1)) for k in range(1, _N_TERMS + 1)]
)


def _check(z) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {z!r}")
    return z


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def log_gamma(z) -> complex:
    """log Gamma(z) on the analytic branch; ``log_gamma(1) == 0``."""
    z = _check(z)
    if _is_nonpositive_integer(z):
        raise DomainError(f"Gamma has a pole at {z.real:g}")
    return complex(sp.loggamma(z))


def arg_gamma_half(y) -> float | np.ndarray:
    """Continuous branch of arg Gamma(1/2 + i y), equal to 0 at y = 0.

    Accepts scalars or arrays.  The analytic log Gamma has no cut crossing the
    line Re z = 1/2, so its imaginary part is already the unwound argument.
    """
    y_arr = np.asarray(y, dtype=float)
    if not np.all(np.isfinite(y_arr)):
        raise DomainError("non-finite argument to arg_gamma_half")
    out = np.imag(sp.loggamma(0.5 + 1j * y_arr))
    return float(out) if out.ndim == 0 else out


def _log_barnes_g_asymptotic(w: complex) -> complex:
    # log G(1 + w) for large |w|, Re w > 0
    lw = np.log(w)
    s = (w * w / 2.0 - 1.0 / 12.0) * lw - 0.75 * w * w + 0.5 * w * math.log(2.0 * math.pi)
    s += _ZETA_PRIME_M1
    inv2 = 1.0 / (w * w)
    p = inv2
    for c in _BARNES_COEFFS:
        s += c * p
        p *= inv2
    return complex(s)


def log_barnes_g(z) -> complex:
    """log G(z) for the Barnes G-function, with ``log G(1) = 0``.

    Shifts z up by an integer N until |z + N| >= 20, evaluates the asymptotic
    expansion there and recurses down through G(z+1) = Gamma(z) G(z).
    """
    z = _check(z)
    if _is_nonpositive_integer(z):
        raise DomainError(f"Barnes G vanishes at {z.real:g}; log G is undefined")
    n_shift = 0
    while abs(z + n_shift) < _SHIFT_RADIUS or (z + n_shift).real < 1.0:
        n_shift += 1
    # log G(z + N) = log G(1 + w) with w = z + N - 1
    acc = _log_barnes_g_asymptotic(z + n_shift - 1.0)
    if n_shift:
        acc -= complex(np.sum(sp.loggamma(z + np.arange(n_shift))))
    return acc
