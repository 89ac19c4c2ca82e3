"""Bulk eigenvalues of T_n(f) for smooth unimodal symbols.

For L < lambda < M the shifted symbol f - lambda has zeros at theta1 < theta2 and

    Psi(lambda)   = (theta1 - theta2)/2 + pi
    Theta(lambda) = sum_{k>=1} Im[V_k (z1^k - z2^k)]
    Z(lambda)     = -sum_{k>=1} Re[V_k (z1^k + z2^k)]

with V_k the Fourier coefficients of ln R(.; lambda) (see ``symbols.shift_smooth``).
The eigenvalues satisfy G(lambda) = (n+1) Psi + Theta = pi j + o(1), j = 1..n.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass

import numpy as np
from scipy import integrate

from .errors import ConsistencyError, DomainError
from .fourier import DEFAULT_GRID, FourierSeries, coeffs_from_fft
from .oracle import build_toeplitz, hermitian_eigenvalues, toeplitz_determinant
from .roots import solve_increasing
from .symbols import SmoothUnimodalSymbol, log_r_samples, root_angles_array

_CHUNK = 64
MAX_EN_N = 512
PHASE_TOL = 1e-11


@dataclass(frozen=True)
class PhaseFunctions:
    psi: float
    theta: float
    z_shift: float
    lam: float
    truncation_tail: float


@dataclass(frozen=True)
class SpectrumPrediction:
    n: int
    j: np.ndarray
    lam_hat: np.ndarray
    phase_residual: np.ndarray


def _phase_batch(sym: SmoothUnimodalSymbol, lams, size: int = DEFAULT_GRID) -> dict:
    lams = np.atleast_1d(np.asarray(lams, dtype=float))
    t1, t2 = root_angles_array(sym, lams)
    K = size // 4
    k = np.arange(1, K + 1)
    out = {name: np.empty(len(lams)) for name in ("theta", "z", "lnr0", "energy", "tail")}
    for s in range(0, len(lams), _CHUNK):
        sl = slice(s, s + _CHUNK)
        # ln R is real, so V_{-k} = conj(V_k) and the half spectrum suffices
        c = np.fft.rfft(log_r_samples(sym, lams[sl], t1[sl], t2[sl], size), axis=1) / size
        vp = c[:, 1:K + 1]
        z1k = np.exp(1j * np.multiply.outer(t1[sl], k))
        z2k = np.exp(1j * np.multiply.outer(t2[sl], k))
        out["theta"][sl] = np.sum(np.imag(vp * (z1k - z2k)), axis=1)
        out["z"][sl] = -np.sum(np.real(vp * (z1k + z2k)), axis=1)
        out["lnr0"][sl] = c[:, 0].real
        out["energy"][sl] = np.sum(k * np.abs(vp) ** 2, axis=1)
        out["tail"][sl] = np.sum(np.abs(vp[:, K // 2:]), axis=1)
    out["t1"], out["t2"] = t1, t2
    out["psi"] = 0.5 * (t1 - t2) + np.pi
    return out


def phase_functions(sym: SmoothUnimodalSymbol, lam: float) -> PhaseFunctions:
    b = _phase_batch(sym, [lam])
    return PhaseFunctions(
        psi=float(b["psi"][0]),
        theta=float(b["theta"][0]),
        z_shift=float(b["z"][0]),
        lam=float(lam),
        truncation_tail=float(b["tail"][0]),
    )


def psi(sym: SmoothUnimodalSymbol, lam) -> float | np.ndarray:
    """Psi(lambda) = (theta1 - theta2)/2 + pi, an increasing map of (L, M) onto (0, pi)."""
    t1, t2 = root_angles_array(sym, np.atleast_1d(lam))
    out = 0.5 * (t1 - t2) + np.pi
    return float(out[0]) if np.ndim(lam) == 0 else out


def theta(sym: SmoothUnimodalSymbol, lam) -> float | np.ndarray:
    out = _phase_batch(sym, lam)["theta"]
    return float(out[0]) if np.ndim(lam) == 0 else out


def z_shift(sym: SmoothUnimodalSymbol, lam) -> float | np.ndarray:
    out = _phase_batch(sym, lam)["z"]
    return float(out[0]) if np.ndim(lam) == 0 else out


def phase_G(sym: SmoothUnimodalSymbol, lams, n: int) -> np.ndarray:
    """G(lambda) = (n+1) Psi(lambda) + Theta(lambda)."""
    b = _phase_batch(sym, lams)
    return (n + 1) * b["psi"] + b["theta"]


# ------------------------------------------------------------------ cross-forms


def psi_quadrature(sym: SmoothUnimodalSymbol, lam: float) -> float:
    """Zeroth Fourier coefficient of Im ln(f - lambda), by quadrature.

    Im ln(f - lambda) is pi off the arc (theta1, theta2) and 0 on it.
    """
    (t1,), (t2,) = root_angles_array(sym, [lam])

    def im_log(t):
        return 0.0 if t1 < t < t2 else math.pi

    val, _ = integrate.quad(im_log, 0.0, 2 * math.pi, points=[t1, t2], epsabs=1e-13, limit=200)
    return val / (2 * math.pi)


def theta_log_modulus(sym: SmoothUnimodalSymbol, lam: float, K: int = 40) -> float:
    """Theta from Im sum (z1^k - z2^k)(ln|f - lambda|)_k - Psi + pi/2.

    The coefficients of ln|f - lambda| are computed by oscillatory quadrature
    on the three arcs cut by the roots; the slowly decaying part of the
    series beyond K comes from the logarithmic singularities only and is
    summed in closed form.
    """
    (t1,), (t2,) = root_angles_array(sym, [lam])

    def log_mod(t):
        # a rule node can land exactly on a root; the log singularity is integrable
        return math.log(max(abs(float(sym(t)) - lam), 1e-300))

    pieces = [(0.0, t1), (t1, t2), (t2, 2 * math.pi)]
    total = 0.0
    z1, z2 = complex(math.cos(t1), math.sin(t1)), complex(math.cos(t2), math.sin(t2))
    for k in range(1, K + 1):
        re = im = 0.0
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            for a, b in pieces:
                re += integrate.quad(log_mod, a, b, weight="cos", wvar=k, epsabs=1e-13, limit=400)[0]
                im -= integrate.quad(log_mod, a, b, weight="sin", wvar=k, epsabs=1e-13, limit=400)[0]
        ck = complex(re, im) / (2 * math.pi)
        total += ((z1**k - z2**k) * ck).imag
    # the singular part -(z1^-k + z2^-k)/(2k) contributes -sin(k phi)/k, phi = t1 - t2
    phi = t1 - t2
    phi_mod = phi % (2 * math.pi)
    head = sum(math.sin(k * phi) / k for k in range(1, K + 1))
    total += -((math.pi - phi_mod) / 2 - head)
    psi_val = 0.5 * (t1 - t2) + math.pi
    return total - psi_val + math.pi / 2


# ------------------------------------------------------------------ prediction


def _lambda_scan(sym: SmoothUnimodalSymbol, count: int) -> np.ndarray:
    # arcsine-distributed points, dense near the edges where G is steep
    phi = np.pi * (np.arange(1, count + 1)) / (count + 1)
    return 0.5 * (sym.L + sym.M) - 0.5 * (sym.M - sym.L) * np.cos(phi)


def predict_bulk_spectrum(sym: SmoothUnimodalSymbol, n: int) -> SpectrumPrediction:
    """Solve (n+1) Psi(lambda) + Theta(lambda) = pi j for j = 1..n.

    A scan of G over an arcsine grid brackets each root and certifies that G
    is increasing; a safeguarded bracketing iteration then refines each root
    until the phase residual is below ``PHASE_TOL``.
    """
    if n < 4:
        raise DomainError("n must be at least 4")
    grid = _lambda_scan(sym, 2 * n + 16)
    grid = grid[(grid > sym.L) & (grid < sym.M)]
    g = phase_G(sym, grid, n)
    if np.any(np.diff(g) <= 0):
        raise ConsistencyError(f"G(lambda) is not increasing on the scan grid for n = {n}")
    lam_grid = np.concatenate([[sym.L], grid, [sym.M]])
    g_grid = np.concatenate([[0.0], g, [(n + 1) * np.pi]])
    j = np.arange(1, n + 1)
    targets = np.pi * j
    pos = np.searchsorted(g_grid, targets)
    lo, hi = lam_grid[pos - 1], lam_grid[pos]

    glo, ghi = g_grid[pos - 1], g_grid[pos]
    lam_hat = solve_increasing(
        lambda x, idx: phase_G(sym, x, n), lo, hi, glo, ghi, targets, ftol=PHASE_TOL
    )
    residual = phase_G(sym, lam_hat, n) - targets
    if np.any(np.diff(lam_hat) <= 0):
        raise ConsistencyError("predicted eigenvalues are not strictly increasing")
    return SpectrumPrediction(n=n, j=j, lam_hat=lam_hat, phase_residual=residual)


def exact_spectrum(sym: SmoothUnimodalSymbol, n: int) -> np.ndarray:
    return hermitian_eigenvalues(build_toeplitz(sym.coefficients(n), n)).eigenvalues


# ------------------------------------------------------------------ E_n diagnostic


def E_n_exact(sym: SmoothUnimodalSymbol, lam: float, n: int) -> float:
    """Rescaled characteristic determinant

        E_n = D_n(f - lambda) (-1)^n |z1 - z2| e^{-Z} exp(-n (ln R)_0 - sum k|V_k|^2) / 2,

    which vanishes exactly at the eigenvalues of T_n(f).
    """
    if n > MAX_EN_N:
        raise DomainError(f"n = {n} too large for an exact determinant (max {MAX_EN_N})")
    b = _phase_batch(sym, [lam])
    c = sym.coefficients(n).coeffs.copy()
    c[len(c) // 2] -= lam
    det = toeplitz_determinant(FourierSeries(c), n)
    if det.is_zero:
        return 0.0
    t1, t2 = b["t1"][0], b["t2"][0]
    chord = abs(np.exp(1j * t1) - np.exp(1j * t2))
    log_scale = math.log(chord / 2) - b["z"][0] - n * b["lnr0"][0] - b["energy"][0]
    sign = math.copysign(1.0, math.cos(det.phase)) * (-1) ** n
    return sign * math.exp(det.log_magnitude + log_scale)


def e_n_residual(sym: SmoothUnimodalSymbol, lam: float, n: int) -> float:
    """e_n(lambda) = E_n(lambda) - sin(G(lambda)), the error term of the quantization condition."""
    if not sym.L < lam < sym.M:
        raise DomainError("lambda must lie in (L, M)")
    return E_n_exact(sym, lam, n) - math.sin(float(phase_G(sym, [lam], n)[0]))


def e_n_envelope(sym: SmoothUnimodalSymbol, n: int, count: int = 41) -> float:
    """sup |e_n| over lambda in [L + d, M - d], d = (M - L)/(10 n)."""
    d = (sym.M - sym.L) / (10 * n)
    lams = np.linspace(sym.L + d, sym.M - d, count)
    return max(abs(e_n_residual(sym, lam, n)) for lam in lams)


def bracket_sign_changes(sym: SmoothUnimodalSymbol, n: int, floor: float = 1e-8) -> dict:
    """Check that E_n changes sign between G = j pi - eps_hat and G = j pi + eps_hat.

    eps_n = max(2 sup|e_n|, floor) and eps_hat = arcsin(eps_n).
    """
    eps_n = max(2 * e_n_envelope(sym, n), floor)
    eps_hat = math.asin(min(eps_n, 1.0))
    pred = predict_bulk_spectrum(sym, n)
    grid = np.concatenate([[sym.L], pred.lam_hat, [sym.M]])
    j = pred.j
    ends = []
    for shift in (-eps_hat, eps_hat):
        ends.append(
            solve_increasing(
                lambda x, idx: phase_G(sym, x, n),
                grid[j - 1], grid[j + 1], (j - 1) * np.pi, (j + 1) * np.pi,
                j * np.pi + shift, ftol=PHASE_TOL,
            )
        )
    flips = [E_n_exact(sym, a, n) * E_n_exact(sym, b, n) < 0 for a, b in zip(*ends)]
    return {"n": n, "eps_n": eps_n, "all_flip": bool(all(flips)), "flips": int(sum(flips))}


# ------------------------------------------------------------------ corollary diagnostics


@dataclass
class CorollaryReport:
    n: int
    eps: float
    a_min: float
    a_max: float
    b_min: float
    b_max: float
    bulk_spacing_min: float
    bulk_spacing_max: float
    edge_ratio_min: float
    edge_ratio_max: float
    edge_lower_bound: float
    edge_upper_bound: float

    def to_dict(self) -> dict:
        return asdict(self)


def rate_functions(sym: SmoothUnimodalSymbol, count: int = 200, rel_step: float = 1e-6):
    """a(lambda), b(lambda) from central differences of Psi and Theta.

    dPsi/dlambda = a / sqrt((lambda - L)(M - lambda)), likewise Theta with b.
    """
    width = sym.M - sym.L
    lams = sym.L + width * (np.arange(1, count + 1) - 0.5) / count
    h = rel_step * width
    up = _phase_batch(sym, lams + h)
    dn = _phase_batch(sym, lams - h)
    w = np.sqrt((lams - sym.L) * (sym.M - lams))
    a = (up["psi"] - dn["psi"]) / (2 * h) * w
    b = (up["theta"] - dn["theta"]) / (2 * h) * w
    return lams, a, b


def corollary_report(sym: SmoothUnimodalSymbol, n: int, eps: float, eigenvalues=None) -> CorollaryReport:
    """Spacing and edge-scaling statistics of the exact spectrum against the corollary bounds."""
    _, a, b = rate_functions(sym)
    a_min, a_max = float(a.min()), float(a.max())
    if not 0 < eps < a_min / 2:
        raise DomainError(f"eps must lie in (0, a_min/2) = (0, {a_min / 2:.4g})")
    ev = exact_spectrum(sym, n) if eigenvalues is None else np.asarray(eigenvalues)
    j = np.arange(1, n + 1)
    gaps = n * np.diff(ev)
    bulk = (j[:-1] / n > 2 * eps) & (j[:-1] / n < 1 - 2 * eps)
    edge = j / n <= 2 * eps
    ratio = (ev[edge] - sym.L) / (sym.M - sym.L) * n**2 / j[edge] ** 2

    def lo_hi(x):
        # small n can leave the bulk or the edge window empty
        return (float(x.min()), float(x.max())) if x.size else (math.nan, math.nan)

    (gap_lo, gap_hi), (ratio_lo, ratio_hi) = lo_hi(gaps[bulk]), lo_hi(ratio)
    return CorollaryReport(
        n=n,
        eps=eps,
        a_min=a_min,
        a_max=a_max,
        b_min=float(b.min()),
        b_max=float(b.max()),
        bulk_spacing_min=gap_lo,
        bulk_spacing_max=gap_hi,
        edge_ratio_min=ratio_lo,
        edge_ratio_max=ratio_hi,
        edge_lower_bound=1.0 / a_max**2,
        edge_upper_bound=math.pi**2 / (4 * a_min**2),
    )
