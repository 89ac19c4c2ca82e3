"""Asymptotics of Toeplitz determinants with Fisher-Hartwig singularities.

For a descriptor F with parameters (z_j, alpha_j, beta_j) and smooth part V,

    D_n(F) ~ exp(n V_0 + sum_k k V_k V_{-k})
             prod_j b_+(z_j)^{beta_j - alpha_j} b_-(z_j)^{-alpha_j - beta_j}
             n^{sum_j (alpha_j^2 - beta_j^2)}
             prod_{j<k} |z_j - z_k|^{2(beta_j beta_k - alpha_j alpha_k)}
                        (z_k / (z_j e^{i pi}))^{alpha_j beta_k - alpha_k beta_j}
             prod_j G(1 + alpha_j + beta_j) G(1 + alpha_j - beta_j) / G(1 + 2 alpha_j)

and the value at zero of the n-th monic orthogonal polynomial of F is

    Phi_n(0) ~ sum_j n^{2 beta_j - 1} z_j^{-n} nu_j^{-1}
               Gamma(1 + alpha_j - beta_j) / Gamma(alpha_j + beta_j) b_-(z_j) / b_+(z_j).

Lowering beta_{j0} by one gives F^-, and D_n(F^-) = z_{j0}^n Phi_n(0) D_n(F).
All powers of unimodular numbers use the angles theta_j in [0, 2*pi).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PreconditionError
from .fourier import FourierSeries, circle_angles, coeffs_from_fft, log_wiener_hopf, szego_sum
from .oracle import LogDet, phi_hat_zero_exact, raise_beta_coeffs, toeplitz_determinant
from .special import log_barnes_g, log_gamma
from .symbols import (
    FHDescriptor,
    SmoothUnimodalSymbol,
    TwoLevelSymbol,
    beta_seminorm,
    shift_smooth,
    shift_two_level,
)


@dataclass(frozen=True)
class AsymptoticDet:
    log_magnitude: float
    phase: float
    n: int
    error_order: float

    @property
    def log(self) -> complex:
        return complex(self.log_magnitude, self.phase)


def _is_pole(z: complex) -> bool:
    return abs(z.imag) < 1e-14 and z.real < 0.5 and abs(z.real - round(z.real)) < 1e-14


def _trivial(desc: FHDescriptor, j: int) -> bool:
    return desc.alphas[j] == 0 and desc.betas[j] == 0


def nu_factor(desc: FHDescriptor, j: int) -> complex:
    """nu_j = exp(-i pi (sum_{p<j} alpha_p - sum_{p>j} alpha_p)) prod_{p != j} (z_j/z_p)^{alpha_p} |z_j - z_p|^{2 beta_p}."""
    if not 0 <= j <= desc.m:
        raise PreconditionError(f"singularity index {j} out of range")
    al, be, th = desc.alphas, desc.betas, desc.thetas
    zs = desc.zs
    log_nu = -1j * math.pi * (np.sum(al[:j]) - np.sum(al[j + 1:]))
    for p in range(desc.m + 1):
        if p == j or _trivial(desc, p):
            continue
        dist = abs(zs[j] - zs[p])
        if dist == 0:
            raise DomainError("coincident singular points")
        log_nu += 1j * al[p] * (th[j] - th[p]) + 2 * be[p] * math.log(dist)
    return complex(np.exp(log_nu))


def phi_hat_terms(desc: FHDescriptor, n: int) -> np.ndarray:
    """The individual terms of the leading sum for Phi_n(0), one per singular point."""
    if np.any(desc.betas.real <= -0.5) or np.any(desc.betas.real > 0.5 + 1e-14):
        raise DomainError("Re beta_j must lie in (-1/2, 1/2]")
    v = desc.v
    terms = np.zeros(desc.m + 1, dtype=complex)
    for j in range(desc.m + 1):
        a, b = complex(desc.alphas[j]), complex(desc.betas[j])
        if _is_pole(a + b):
            # 1/Gamma(alpha + beta) = 0
            continue
        if _is_pole(1 + a - b):
            raise DomainError(f"Gamma(1 + alpha - beta) has a pole at singularity {j}")
        lp, lm = log_wiener_hopf(v, desc.zs[j])
        log_t = (
            (2 * b - 1) * math.log(n)
            - 1j * n * desc.thetas[j]
            + log_gamma(1 + a - b)
            - log_gamma(a + b)
            + lm
            - lp
        )
        terms[j] = np.exp(log_t) / nu_factor(desc, j)
    return terms


def asymptotic_phi_hat_zero(desc: FHDescriptor, n: int) -> complex:
    """Leading-order Phi_n(0) for the symbol described by ``desc``."""
    return complex(np.sum(phi_hat_terms(desc, n)))


def asymptotic_log_det(desc: FHDescriptor, n: int) -> AsymptoticDet:
    """Leading-order log D_n(F), including the Barnes G constant."""
    al, be, th = desc.alphas, desc.betas, desc.thetas
    v = desc.v
    s, _ = szego_sum(v)
    total = n * v[0] + s
    total += np.sum(al**2 - be**2) * math.log(n)
    for j in range(desc.m + 1):
        if _trivial(desc, j):
            continue
        a, b = complex(al[j]), complex(be[j])
        for arg in (1 + a + b, 1 + a - b, 1 + 2 * a):
            if _is_pole(arg):
                raise DomainError(f"Barnes G pole: parameters alpha +- beta at singularity {j}")
        lp, lm = log_wiener_hopf(v, desc.zs[j])
        total += (b - a) * lp + (-a - b) * lm
        total += log_barnes_g(1 + a + b) + log_barnes_g(1 + a - b) - log_barnes_g(1 + 2 * a)
    for j in range(desc.m + 1):
        for k in range(j + 1, desc.m + 1):
            if _trivial(desc, j) or _trivial(desc, k):
                continue
            dist = abs(desc.zs[j] - desc.zs[k])
            total += 2 * (be[j] * be[k] - al[j] * al[k]) * math.log(dist)
            # log(z_k / (z_j e^{i pi})) = i (theta_k - theta_j - pi), in (-i pi, i pi)
            total += (al[j] * be[k] - al[k] * be[j]) * 1j * (th[k] - th[j] - math.pi)
    total = complex(total)
    return AsymptoticDet(
        log_magnitude=total.real,
        phase=math.remainder(total.imag, 2 * math.pi),
        n=n,
        error_order=beta_seminorm(desc) - 1.0,
    )


def log_difference(exact: LogDet, asym: AsymptoticDet) -> complex:
    """exact.log - asym.log with the phase difference reduced to (-pi, pi]."""
    return complex(exact.log_magnitude - asym.log_magnitude, math.remainder(exact.phase - asym.phase, 2 * math.pi))


# ---------------------------------------------------------------- symbols of the two examples


@dataclass(frozen=True)
class ShiftedPair:
    """Descriptor of F, with exact coefficients of F and of F^- = f - lambda."""

    desc: FHDescriptor
    F: FourierSeries
    Fminus: FourierSeries
    j0: int

    @property
    def theta_j0(self) -> float:
        return float(self.desc.thetas[self.j0])


def shifted_pair(sym, lam: float, n: int) -> ShiftedPair:
    """Descriptor and Fourier data for f - lambda, for either kind of symbol."""
    if isinstance(sym, SmoothUnimodalSymbol):
        desc = shift_smooth(sym, lam)
    elif isinstance(sym, TwoLevelSymbol):
        desc = shift_two_level(sym, lam)
    else:
        raise PreconditionError(f"unsupported symbol type {type(sym).__name__}")
    c = sym.coefficients(n + 1).coeffs.copy()
    c[len(c) // 2] -= lam
    fminus = FourierSeries(c)
    j0 = desc.meta["j0"]
    return ShiftedPair(desc, raise_beta_coeffs(fminus, desc.thetas[j0]), fminus, j0)


def phi_hat_errors(sym, lam: float, ns) -> list[dict]:
    """|exact - asymptotic| for Phi_n(0) along ``ns``."""
    rows = []
    for n in ns:
        pair = shifted_pair(sym, lam, n)
        exact = phi_hat_zero_exact(pair.F, pair.Fminus, pair.theta_j0, n)
        asym = asymptotic_phi_hat_zero(pair.desc, n)
        rows.append({"n": n, "exact": exact, "asymptotic": asym, "abs_error": abs(exact - asym)})
    return rows


def fit_loglog_slope(ns, errors) -> float:
    """Least-squares slope of log(error) against log(n)."""
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.asarray(errors, dtype=float))
    return float(np.polyfit(x, y, 1)[0])


def log_det_convergence(sym, lam: float, ns) -> dict:
    """Exact vs asymptotic log D_n(F) along ``ns`` for the raised-beta symbol F."""
    rows = []
    desc = None
    for n in ns:
        pair = shifted_pair(sym, lam, n)
        desc = pair.desc
        exact = toeplitz_determinant(pair.F, n)
        asym = asymptotic_log_det(pair.desc, n)
        diff = log_difference(exact, asym)
        rows.append(
            {
                "n": n,
                "log_det_exact": exact.log_magnitude,
                "log_det_asymptotic": asym.log_magnitude,
                "abs_error": abs(diff),
                "rel_error": abs(diff) / max(abs(exact.log), 1e-300),
            }
        )
    slope = fit_loglog_slope([r["n"] for r in rows], [r["abs_error"] for r in rows])
    order = beta_seminorm(desc) - 1.0
    return {"rows": rows, "fitted_slope": slope, "seminorm": order + 1.0, "error_order": order}


def consistency_triangle(sym, lam: float, n: int) -> dict:
    """Compare exact D_n(F^-) with z_{j0}^n Phi_n(0) D_n(F), both factors asymptotic.

    The envelope is the sum of the empirical relative errors of the two
    factors.
    """
    pair = shifted_pair(sym, lam, n)
    d_fminus = toeplitz_determinant(pair.Fminus, n)
    d_f = toeplitz_determinant(pair.F, n)
    asym_f = asymptotic_log_det(pair.desc, n)
    phi_exact = phi_hat_zero_exact(pair.F, pair.Fminus, pair.theta_j0, n)
    phi_asym = asymptotic_phi_hat_zero(pair.desc, n)
    # D_n(F^-) / (z^n D_n^asym(F)) against Phi_asym, compared in log space
    ratio = np.exp(d_fminus.log - asym_f.log - 1j * n * pair.theta_j0)
    mismatch = abs(ratio - phi_asym) / max(abs(phi_asym), abs(phi_exact))
    env_phi = abs(phi_exact - phi_asym) / max(abs(phi_asym), abs(phi_exact))
    env_det = abs(np.expm1(log_difference(d_f, asym_f)))
    envelope = env_phi + env_det + env_phi * env_det
    return {
        "n": n,
        "mismatch": float(mismatch),
        "envelope": float(envelope),
        "consistent": bool(mismatch <= envelope * (1 + 1e-6) + 1e-12),
    }


def szego_anchor(K: int = 64) -> FourierSeries:
    """V = ln|1 - r e^{i theta}|^2 with r^2 = 1 - e^{-1/4}.

    V_0 = 0 and sum k V_k V_{-k} = -ln(1 - r^2) = 1/4, the same limit as for
    V = cos(theta), but D_n approaches it only like r^{2n}, so the convergence
    is visible in double precision.
    """
    r = math.sqrt(-math.expm1(-0.25))
    k = np.arange(-K, K + 1)
    c = np.zeros(2 * K + 1, dtype=complex)
    nz = k != 0
    c[nz] = -(r ** np.abs(k[nz])) / np.abs(k[nz])
    return FourierSeries(c)


def szego_check(v: FourierSeries, ns) -> list[dict]:
    """|log D_n(e^V) - (n V_0 + sum k V_k V_{-k})| for a symbol without singularities."""
    s, tail = szego_sum(v)
    size = 1
    while size < 4 * max(max(ns), v.K):
        size *= 2
    size = max(size, 8192)
    theta = circle_angles(size)
    rows = []
    for n in ns:
        c = FourierSeries(coeffs_from_fft(np.exp(v(theta)), n))
        exact = toeplitz_determinant(c, n)
        limit = complex(n * v[0] + s)
        rows.append(
            {
                "n": n,
                "log_det": exact.log_magnitude,
                "limit": limit.real,
                "abs_error": abs(exact.log_magnitude - limit.real),
                "tail": tail,
            }
        )
    return rows
