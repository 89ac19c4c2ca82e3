"""Discretized time-band limiting and Slepian's eigenvalue limit.

With sampling step delta, the operator that restricts to S = (0, s2) in time
and to T = (t1, t2) in frequency becomes (the transpose of) T_n(chi) where chi
is the indicator of the arc (delta t1, delta t2) and n = floor(c s2 / delta).
For

    k = floor(|S| |T| c / (2 pi) + b ln(c) / pi^2)

the k-th eigenvalue, counted from the top, tends to 1 / (1 + e^b) as c grows,
at a logarithmic rate.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import linalg as sla

from .errors import DomainError
from .fourier import FourierSeries
from .oracle import MAX_EIG_N, ToeplitzMatrix, build_toeplitz
from .symbols import TwoLevelSymbol

DEFAULT_DELTA = 1.0 / 16


@dataclass(frozen=True)
class SlepianSetup:
    T_interval: tuple[float, float]
    S_interval: tuple[float, float]
    c: float
    delta: float = DEFAULT_DELTA
    b: float = 0.0

    def __post_init__(self):
        t1, t2 = self.T_interval
        s1, s2 = self.S_interval
        if s1 != 0 or not s2 > 0:
            raise DomainError("S must be an interval (0, s2) with s2 > 0")
        if not t2 > t1:
            raise DomainError("T must be a nonempty interval")
        if not (self.c > 0 and self.delta > 0):
            raise DomainError("c and delta must be positive")
        if self.delta * (t2 - t1) >= 2 * math.pi:
            raise DomainError("delta |T| must be below 2 pi (the arc would cover the circle)")
        if self.n < 8:
            raise DomainError(f"n = floor(c s2 / delta) = {self.n} is below 8")

    @property
    def n(self) -> int:
        return int(math.floor(self.c * self.S_interval[1] / self.delta + 1e-9))

    @property
    def arc(self) -> tuple[float, float]:
        t1, t2 = self.T_interval
        return self.delta * t1, self.delta * t2

    @property
    def limit(self) -> float:
        return 1.0 / (1.0 + math.exp(self.b))


def _indicator_coeffs(lo: float, hi: float, K: int) -> np.ndarray:
    # chi_k = (e^{-ik lo} - e^{-ik hi}) / (2 pi i k), chi_0 = (hi - lo) / (2 pi)
    k = np.arange(-K, K + 1)
    c = np.empty(2 * K + 1, dtype=complex)
    nz = k != 0
    kk = k[nz].astype(float)
    c[nz] = (np.exp(-1j * kk * lo) - np.exp(-1j * kk * hi)) / (2j * np.pi * kk)
    c[K] = (hi - lo) / (2 * np.pi)
    return c


def slepian_matrix(setup: SlepianSetup, centered: bool = False) -> ToeplitzMatrix:
    """T_n(chi) for the arc (delta t1, delta t2).

    With ``centered`` the arc is rotated to be symmetric about pi, which is a
    diagonal unitary similarity and makes the matrix real symmetric.
    """
    lo, hi = setup.arc
    if centered:
        half = (hi - lo) / 2
        lo, hi = math.pi - half, math.pi + half
    c = _indicator_coeffs(lo, hi, setup.n)
    if centered:
        c = c.real.astype(complex)
    return build_toeplitz(FourierSeries(c), setup.n)


def slepian_index(setup: SlepianSetup) -> int:
    """k = floor(|S||T| c / (2 pi) + b ln(c) / pi^2)."""
    t1, t2 = setup.T_interval
    arg = setup.S_interval[1] * (t2 - t1) * setup.c / (2 * math.pi) + setup.b * math.log(setup.c) / math.pi**2
    if arg <= 0:
        raise DomainError("the index formula gives a nonpositive argument")
    return int(math.floor(arg + 1e-12))


def two_level_equivalent(setup: SlepianSetup) -> TwoLevelSymbol:
    """Two-level symbol with levels 1 and 2 on the same arc: its spectrum is that of T_n(chi) plus one."""
    lo, hi = setup.arc
    return TwoLevelSymbol(lo, hi, math.log(2.0) / (2 * math.pi))


def _eigen_pair(setup: SlepianSetup, k: int) -> tuple[float, float]:
    """(k-th largest, k-th smallest) eigenvalue of T_n(chi)."""
    n = setup.n
    if n > MAX_EIG_N:
        raise DomainError(f"n = {n} exceeds the dense size cap {MAX_EIG_N}")
    if not 1 <= k <= n:
        raise DomainError(f"index k = {k} outside 1..{n}")
    A = slepian_matrix(setup, centered=True).dense().real
    lo, hi = sorted((k - 1, n - k))
    w = sla.eigvalsh(A, subset_by_index=[lo, hi], check_finite=False)
    return float(w[-1] if n - k >= k - 1 else w[0]), float(w[0] if n - k >= k - 1 else w[-1])


@dataclass
class SlepianReport:
    b: float
    target: float
    indexing: str
    rows: list = field(default_factory=list)
    monotone: bool = False
    final_deviation: float = math.nan

    def to_dict(self) -> dict:
        return asdict(self)


def slepian_limit_check(
    cs,
    b: float = 0.0,
    delta: float = DEFAULT_DELTA,
    S=(0.0, 1.0),
    T=(16.0, 16.0 + 16.0 * math.pi),
) -> SlepianReport:
    """Track lambda_k(c) against 1/(1 + e^b) along increasing c.

    Eigenvalues are counted both from the top and from the bottom of the
    spectrum.  The report keeps the convention whose deviations decrease
    monotonically (the smaller final deviation breaks ties) and records which
    one it was.  ``index_shift`` is the contribution of the b ln(c) term to k;
    while it is 0 the sweep cannot yet distinguish b from 0.
    """
    top, bottom = [], []
    for c in cs:
        setup = SlepianSetup(T_interval=tuple(T), S_interval=tuple(S), c=float(c), delta=delta, b=b)
        k = slepian_index(setup)
        k0 = slepian_index(SlepianSetup(tuple(T), tuple(S), float(c), delta, 0.0))
        hi_k, lo_k = _eigen_pair(setup, k)
        top.append((c, setup.n, k, k - k0, hi_k))
        bottom.append((c, setup.n, k, k - k0, lo_k))
    target = 1.0 / (1.0 + math.exp(b))
    best = None
    for name, data in (("top", top), ("bottom", bottom)):
        rows = [
            {
                "c": c,
                "n": n,
                "k": k,
                "index_shift": shift,
                "lambda_k": lam,
                "target": target,
                "deviation": abs(lam - target),
            }
            for c, n, k, shift, lam in data
        ]
        devs = [r["deviation"] for r in rows]
        rep = SlepianReport(
            b=b,
            target=target,
            indexing=name,
            rows=rows,
            monotone=bool(np.all(np.diff(devs) < 0)),
            final_deviation=devs[-1],
        )
        if best is None or (rep.monotone, -rep.final_deviation) > (best.monotone, -best.final_deviation):
            best = rep
    return best
