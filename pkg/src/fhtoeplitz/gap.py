"""Eigenvalues of T_n(f) inside the gap of a two-level symbol.

For f equal to e^{2 pi gamma} on an arc (theta1, theta2) and 1 elsewhere, an
eigenvalue lambda in the gap (1, e^{2 pi gamma}) satisfies

    (theta2 - theta1) n / (2 pi) + H_n(lambda) / pi = k + 1/2 + O(1/n),
    H_n(lambda) = 2 gamma_lambda ln(n |z1 - z2|) - 2 h(lambda),
    h(lambda)   = arg Gamma(1/2 + i gamma_lambda),

so the gap holds O(ln n) eigenvalues spaced by about 1/ln n.  When
theta2 - theta1 = 2 pi p / q, eigenvalue k of T_n nearly coincides with
eigenvalue k + p of T_{n+q}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bulk import PHASE_TOL
from .determinants import phi_hat_terms, shifted_pair
from .errors import ConsistencyError, DomainError
from .oracle import build_toeplitz, hermitian_eigenvalues, phi_hat_zero_exact
from .roots import solve_increasing
from .special import arg_gamma_half
from .symbols import TwoLevelSymbol, gamma_lambda

__all__ = [
    "GapSpectrum",
    "PeriodicityMatch",
    "gamma_lambda",
    "h",
    "H_n",
    "gap_phase",
    "gap_interval",
    "predict_gap_spectrum",
    "exact_gap_spectrum",
    "match_near_periodic",
    "spacing_band",
    "coverage_check",
    "gap_E_n",
]

_SCAN = 257


@dataclass(frozen=True)
class GapSpectrum:
    """Gap eigenvalues labelled by k, ascending in k (so descending in lambda)."""

    n: int
    eps: float
    k: np.ndarray
    lam_hat: np.ndarray
    phase_residual: np.ndarray

    def __len__(self) -> int:
        return len(self.k)

    def by_label(self) -> dict[int, float]:
        return {int(k): float(lam) for k, lam in zip(self.k, self.lam_hat)}


@dataclass
class PeriodicityMatch:
    n: int
    q: int
    p: int
    pairs: list = field(default_factory=list)  # (k, lam_n, lam_nq, distance)
    unmatched: list = field(default_factory=list)
    nearest_neighbor: list = field(default_factory=list)

    @property
    def distances(self) -> np.ndarray:
        return np.array([d for *_, d in self.pairs])

    def scaled_max(self) -> float:
        """max distance * n ln n over matched pairs."""
        if not self.pairs:
            return math.nan
        return float(self.distances.max() * self.n * math.log(self.n))

    def scaled_min(self) -> float:
        if not self.pairs:
            return math.nan
        return float(self.distances.min() * self.n * math.log(self.n))


def _chord(sym: TwoLevelSymbol) -> float:
    return 2.0 * math.sin(sym.arc / 2)


def h(sym: TwoLevelSymbol, lam):
    """h(lambda) = arg Gamma(1/2 + i gamma_lambda), continuous, 0 at mid-gap."""
    return arg_gamma_half(gamma_lambda(sym.gamma, lam))


def H_n(sym: TwoLevelSymbol, lam, n: int):
    scale = n * _chord(sym)
    if scale <= 1:
        raise DomainError(f"n |z1 - z2| = {scale:.3g} must exceed 1")
    g = gamma_lambda(sym.gamma, lam)
    return 2.0 * g * math.log(scale) - 2.0 * arg_gamma_half(g)


def gap_phase(sym: TwoLevelSymbol, lam, n: int):
    """(theta2 - theta1) n / (2 pi) + H_n(lambda) / pi; eigenvalues sit near k + 1/2."""
    return sym.arc * n / (2 * math.pi) + H_n(sym, lam, n) / math.pi


def gap_interval(sym: TwoLevelSymbol, eps: float) -> tuple[float, float]:
    """I_eps = (1 + eps, e^{2 pi gamma} - eps)."""
    if not 0 < eps < (sym.high - 1) / 2:
        raise DomainError(f"eps must lie in (0, {(sym.high - 1) / 2:.4g})")
    return 1.0 + eps, sym.high - eps


def predict_gap_spectrum(sym: TwoLevelSymbol, n: int, eps: float) -> GapSpectrum:
    """Solve gap_phase(lambda) = k + 1/2 for every k reachable inside I_eps.

    The phase is decreasing in lambda; this is checked on a scan grid before
    the roots are refined.  An empty result is returned when I_eps holds no
    half-integer phase.
    """
    a, b = gap_interval(sym, eps)
    grid = np.linspace(a, b, _SCAN)
    ph = gap_phase(sym, grid, n)
    if np.any(np.diff(ph) >= 0):
        raise ConsistencyError(f"gap phase is not decreasing on I_eps for n = {n}")
    k = np.arange(math.ceil(ph[-1] - 0.5), math.floor(ph[0] - 0.5) + 1)
    k = k[(k + 0.5 > ph[-1]) & (k + 0.5 < ph[0])]
    if len(k) == 0:
        empty = np.array([])
        return GapSpectrum(n, eps, k, empty, empty)
    targets = k + 0.5
    # work with -phase so the function is increasing in lambda
    neg = -ph
    pos = np.searchsorted(neg, -targets)
    lam_hat = solve_increasing(
        lambda x, idx: -gap_phase(sym, x, n),
        grid[pos - 1], grid[pos], neg[pos - 1], neg[pos], -targets,
        ftol=PHASE_TOL,
    )
    residual = gap_phase(sym, lam_hat, n) - targets
    return GapSpectrum(n, eps, k, lam_hat, residual)


def exact_gap_eigenvalues(sym: TwoLevelSymbol, n: int, eps: float) -> np.ndarray:
    """Eigenvalues of T_n(f) inside I_eps, ascending."""
    a, b = gap_interval(sym, eps)
    ev = hermitian_eigenvalues(build_toeplitz(sym.coefficients(n), n)).eigenvalues
    return ev[(ev > a) & (ev < b)]


def exact_gap_spectrum(sym: TwoLevelSymbol, n: int, eps: float, eigenvalues=None) -> GapSpectrum:
    """Exact gap eigenvalues labelled by the nearest half-integer of their phase."""
    ev = exact_gap_eigenvalues(sym, n, eps) if eigenvalues is None else np.asarray(eigenvalues)
    if len(ev) == 0:
        empty = np.array([])
        return GapSpectrum(n, eps, empty.astype(int), empty, empty)
    ph = gap_phase(sym, ev, n)
    k = np.round(ph - 0.5).astype(int)
    order = np.argsort(k)
    k, ev, ph = k[order], ev[order], ph[order]
    if np.any(np.diff(k) <= 0):
        raise ConsistencyError(f"two exact gap eigenvalues share a label at n = {n}")
    return GapSpectrum(n, eps, k, ev, ph - (k + 0.5))


def match_near_periodic(spec_n: GapSpectrum, spec_nq: GapSpectrum, q: int, p: int) -> PeriodicityMatch:
    """Pair label k at n with label k + p at n + q.

    Labels whose partner falls outside the second spectrum are listed as
    unmatched.  Nearest-neighbour distances are recorded as a cross-check.
    """
    partner = spec_nq.by_label()
    match = PeriodicityMatch(n=spec_n.n, q=q, p=p)
    others = np.asarray(spec_nq.lam_hat)
    for k, lam in zip(spec_n.k, spec_n.lam_hat):
        k, lam = int(k), float(lam)
        if len(others):
            match.nearest_neighbor.append(float(np.min(np.abs(others - lam))))
        if k + p in partner:
            lam_q = partner[k + p]
            match.pairs.append((k, lam, lam_q, abs(lam - lam_q)))
        else:
            match.unmatched.append(k)
    return match


def spacing_band(spectra) -> dict:
    """Per-n range of (consecutive gap spacing) * ln n."""
    rows = []
    for spec in spectra:
        lam = np.sort(spec.lam_hat)
        s = np.diff(lam) * math.log(spec.n)
        rows.append({"n": spec.n, "count": len(lam), "lo": float(s.min()), "hi": float(s.max())})
    lo = max(r["lo"] for r in rows)
    hi = min(r["hi"] for r in rows)
    return {
        "rows": rows,
        "band_lo": min(r["lo"] for r in rows),
        "band_hi": max(r["hi"] for r in rows),
        "overlap": bool(lo <= hi),
    }


def coverage_check(sym: TwoLevelSymbol, spec: GapSpectrum, length: float) -> dict:
    """Does every closed subinterval of I_eps of the given length contain an eigenvalue?"""
    a, b = gap_interval(sym, spec.eps)
    pts = np.concatenate([[a], np.sort(spec.lam_hat), [b]])
    widest = float(np.max(np.diff(pts)))
    return {"n": spec.n, "length": length, "widest_hole": widest, "covered": bool(widest <= length)}


def gap_E_n(sym: TwoLevelSymbol, lam: float, n: int) -> complex:
    """Exact Phi_n(0) normalized by the amplitude and mean phase of its two leading terms.

    The leading terms have equal modulus A, so Phi_n(0) ~ 2 A e^{i phi} cos(delta);
    the returned value is Phi_n(0) e^{-i phi} / (2 A), whose real part plays the
    role of E_n(lambda) (zero exactly at eigenvalues of T_n) and whose
    imaginary part is O(1/n).
    """
    pair = shifted_pair(sym, lam, n)
    t = phi_hat_terms(pair.desc, n)
    t1, t2 = t[1], t[2]
    amp = math.sqrt(abs(t1) * abs(t2))
    phi = 0.5 * (np.angle(t1) + np.angle(t2))
    exact = phi_hat_zero_exact(pair.F, pair.Fminus, pair.theta_j0, n)
    return complex(exact * np.exp(-1j * phi) / (2 * amp))
