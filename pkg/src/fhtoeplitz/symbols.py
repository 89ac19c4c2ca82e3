"""Symbols, their lambda-shifts and Fisher-Hartwig descriptors.

Two families are supported:

* ``SmoothUnimodalSymbol``: f = exp(V) with V a real trigonometric polynomial,
  f increasing on (0, theta_max) and decreasing on (theta_max, 2*pi), so the
  minimum L sits at theta = 0 and the maximum M at theta_max.
* ``TwoLevelSymbol``: f = exp(2*pi*gamma) on the arc [theta1, theta2) and 1
  elsewhere.

Subtracting lambda from either one yields a symbol with two Fisher-Hartwig
singularities, described by ``FHDescriptor``.  Descriptors returned by
``shift_smooth`` and ``shift_two_level`` are in the normalization where both
singular points carry Re beta = 1/2; the shifted symbol f - lambda itself is
``desc.lowered(2)``.  The beta parameters of a symbol are only defined up to
integer shifts summing to zero, so other normalizations describe the same
function up to a factor prod z_j^{n_j}.

Angles are always taken in [0, 2*pi), and powers (z_j / z_p)^a mean
exp(i a (theta_j - theta_p)).
"""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, FHToeplitzError, PreconditionError, UnsupportedError
from .fourier import DEFAULT_GRID, FourierSeries, circle_angles, coeffs_from_fft
from .roots import solve_increasing

TWO_PI = 2.0 * np.pi
UNIMODAL_GRID = 8192
# half-width of the window around a root where R is interpolated
R_LIMIT_STEP = 1e-5


@dataclass(frozen=True, eq=False)
class SmoothUnimodalSymbol:
    """f(e^{i theta}) = exp(V(theta)) with a single minimum at 0 and maximum at theta_max."""

    v: FourierSeries
    theta_max: float
    L: float
    M: float
    name: str = ""
    _grid_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_log_coefficients(cls, v: FourierSeries, name: str = "") -> "SmoothUnimodalSymbol":
        """Certify unimodality of exp(V) and locate its extrema."""
        if not v.is_real_symbol():
            raise DomainError("V must be real-valued: V_{-k} = conj(V_k)")
        theta = circle_angles(UNIMODAL_GRID)
        fv = np.exp(np.real(v(theta)))
        if np.argmin(fv) != 0:
            raise DomainError("minimum of the symbol must sit at theta = 0")
        diff = np.diff(np.append(fv, fv[0]))
        sign = np.sign(diff)
        sign = sign[sign != 0]
        changes = np.count_nonzero(sign[1:] != sign[:-1])
        if changes != 1 or sign[0] < 0:
            raise DomainError(f"symbol is not unimodal on the circle ({changes} monotonicity changes)")

        def dv(t):
            return _dlog(v, t, 1)

        if abs(dv(0.0)) > 1e-10:
            raise DomainError("theta = 0 is not a critical point of the symbol")
        i_max = int(np.argmax(fv))
        h = TWO_PI / UNIMODAL_GRID
        theta_max = brentq(dv, theta[i_max] - h, theta[i_max] + h, xtol=1e-15)
        # f'' = f V'' at critical points
        if abs(_dlog(v, 0.0, 2)) < 1e-8 or abs(_dlog(v, theta_max, 2)) < 1e-8:
            raise DomainError("degenerate extremum: f'' vanishes at the minimum or maximum")
        L = float(np.exp(np.real(v(0.0))))
        M = float(np.exp(np.real(v(theta_max))))
        return cls(v=v, theta_max=float(theta_max), L=L, M=M, name=name)

    @classmethod
    def from_log_function(cls, log_f, K: int = 64, name: str = "") -> "SmoothUnimodalSymbol":
        """Build from a callable theta -> V(theta) = ln f(theta), truncated at |k| <= K."""
        size = max(DEFAULT_GRID, 4 * K)
        c = coeffs_from_fft(log_f(circle_angles(size)), K)
        c = 0.5 * (c + np.conj(c[::-1]))
        return cls.from_log_coefficients(FourierSeries(c), name=name)

    def __call__(self, theta) -> np.ndarray:
        return np.exp(np.real(self.v(theta)))

    def grid_values(self, size: int = DEFAULT_GRID) -> np.ndarray:
        """f at the angles 2*pi*l/size (cached, read-only)."""
        vals = self._grid_cache.get(size)
        if vals is None:
            vals = self(circle_angles(size))
            vals.setflags(write=False)
            self._grid_cache[size] = vals
        return vals

    def coefficients(self, K: int) -> FourierSeries:
        """Fourier coefficients f_k of the symbol itself, |k| <= K."""
        size = DEFAULT_GRID
        while size < 4 * K:
            size *= 2
        return FourierSeries(coeffs_from_fft(self(circle_angles(size)), K))


def _dlog(v: FourierSeries, theta, order: int):
    # d^order/dtheta^order of the real part of V
    k = np.arange(-v.K, v.K + 1)
    d = np.sum(v.coeffs * (1j * k) ** order * np.exp(1j * k * theta))
    return float(np.real(d))


@dataclass(frozen=True)
class TwoLevelSymbol:
    """exp(2*pi*gamma) on [theta1, theta2), 1 on the rest of the circle."""

    theta1: float
    theta2: float
    gamma: float
    rational_arc: tuple[int, int] | None = None

    def __post_init__(self):
        if not (0.0 < self.theta1 < self.theta2 < TWO_PI):
            raise DomainError("need 0 < theta1 < theta2 < 2*pi")
        if not self.gamma > 0:
            raise DomainError("gamma must be positive")
        if self.rational_arc is not None:
            p, q = self.rational_arc
            if not (0 < p < q) or math.gcd(p, q) != 1:
                raise DomainError("rational arc needs coprime 0 < p < q")

    @classmethod
    def from_rational(cls, p: int, q: int, gamma: float, theta1: float | None = None) -> "TwoLevelSymbol":
        """Arc of length exactly 2*pi*p/q starting at theta1 (default: centered on pi)."""
        if not (0 < p < q) or math.gcd(p, q) != 1:
            raise DomainError("rational arc needs coprime 0 < p < q")
        arc = TWO_PI * p / q
        if theta1 is None:
            theta1 = np.pi - arc / 2
        return cls(theta1, theta1 + arc, gamma, (p, q))

    @property
    def high(self) -> float:
        return math.exp(TWO_PI * self.gamma)

    @property
    def arc(self) -> float:
        return self.theta2 - self.theta1

    def __call__(self, theta) -> np.ndarray:
        t = np.mod(np.asarray(theta, dtype=float), TWO_PI)
        return np.where((t >= self.theta1) & (t < self.theta2), self.high, 1.0)

    def coefficients(self, K: int) -> FourierSeries:
        """Closed-form f_k = (e^{2 pi gamma} - 1)(e^{-ik theta1} - e^{-ik theta2}) / (2 pi i k)."""
        k = np.arange(-K, K + 1)
        c = np.empty(2 * K + 1, dtype=complex)
        nz = k != 0
        kk = k[nz].astype(float)
        c[nz] = (self.high - 1.0) * (np.exp(-1j * kk * self.theta1) - np.exp(-1j * kk * self.theta2)) / (
            2j * np.pi * kk
        )
        c[K] = 1.0 + (self.high - 1.0) * self.arc / TWO_PI
        return FourierSeries(c)

    def complement(self) -> "TwoLevelSymbol":
        """Same levels on an arc of the complementary length.

        Up to a rotation of the circle (a unitary similarity of T_n) and the
        affine map x -> 1 + e^{2 pi gamma} - x, this is the symbol with the
        roles of the arc and its complement exchanged.
        """
        if self.rational_arc is None:
            return TwoLevelSymbol(self.arc / 2, self.arc / 2 + TWO_PI - self.arc, self.gamma)
        p, q = self.rational_arc
        return TwoLevelSymbol.from_rational(q - p, q, self.gamma)


@dataclass(frozen=True, eq=False)
class FHDescriptor:
    """exp(V) z^{sum beta} prod_j |z - z_j|^{2 alpha_j} g_{z_j, beta_j}(z) z_j^{-beta_j}.

    Index 0 is always z_0 = 1 (theta_0 = 0), possibly with alpha_0 = beta_0 = 0.
    """

    v: FourierSeries
    thetas: np.ndarray
    alphas: np.ndarray
    betas: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        th = np.asarray(self.thetas, dtype=float)
        al = np.asarray(self.alphas, dtype=complex)
        be = np.asarray(self.betas, dtype=complex)
        if not (len(th) == len(al) == len(be)) or len(th) == 0:
            raise PreconditionError("thetas, alphas and betas must have equal nonzero length")
        if th[0] != 0.0:
            raise DomainError("z_0 = 1 must be listed first")
        if np.any(np.diff(th) <= 0) or th[-1] >= TWO_PI:
            raise DomainError("singular angles must satisfy 0 = theta_0 < ... < theta_m < 2*pi")
        if np.any(al.real <= -0.5):
            raise DomainError("Re alpha_j must exceed -1/2")
        object.__setattr__(self, "thetas", th)
        object.__setattr__(self, "alphas", al)
        object.__setattr__(self, "betas", be)

    @property
    def m(self) -> int:
        return len(self.thetas) - 1

    @property
    def zs(self) -> np.ndarray:
        return np.exp(1j * self.thetas)

    def shifted_beta(self, j: int, delta: int) -> "FHDescriptor":
        betas = self.betas.copy()
        betas[j] += delta
        return replace(self, betas=betas)

    def lowered(self, j0: int) -> "FHDescriptor":
        """The symbol F^- with beta_{j0} replaced by beta_{j0} - 1."""
        return self.shifted_beta(j0, -1)

    def __call__(self, theta) -> np.ndarray:
        """Pointwise value of the symbol; singular points themselves excluded."""
        theta = np.mod(np.asarray(theta, dtype=float), TWO_PI)
        z = np.exp(1j * theta)
        out = np.exp(self.v(theta)) * np.exp(1j * theta * np.sum(self.betas))
        for th_j, a, b in zip(self.thetas, self.alphas, self.betas):
            if a == 0 and b == 0:
                continue
            out = out * np.abs(z - np.exp(1j * th_j)) ** (2 * a)
            out = out * np.where(theta < th_j, np.exp(1j * np.pi * b), np.exp(-1j * np.pi * b))
            out = out * np.exp(-1j * b * th_j)
        return out


def beta_seminorm(desc: FHDescriptor) -> float:
    """max_{j,k} |Re beta_j - Re beta_k|; index 0 is skipped when z_0 is not singular."""
    re = desc.betas.real
    if desc.alphas[0] == 0 and desc.betas[0] == 0:
        re = re[1:]
    if desc.m == 0 or len(re) < 2:
        return 0.0
    return float(re.max() - re.min())


# ---------------------------------------------------------------- root angles


def root_angles_array(sym: SmoothUnimodalSymbol, lams) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized ``root_angles``: the two solutions of f(theta) = lambda."""
    lams = np.asarray(lams, dtype=float)
    if np.any(lams <= sym.L) or np.any(lams >= sym.M):
        raise DomainError(f"lambda must lie strictly inside ({sym.L}, {sym.M})")
    ftol = 2e-16 * sym.M
    t1 = solve_increasing(lambda t, idx: sym(t), 0.0, sym.theta_max, sym.L, sym.M, lams, ftol=ftol)
    t2 = solve_increasing(
        lambda t, idx: -sym(t), sym.theta_max, TWO_PI, -sym.M, -sym.L, -lams, ftol=ftol
    )
    return t1, t2


def root_angles(sym: SmoothUnimodalSymbol, lam: float) -> tuple[float, float]:
    """Angles 0 < theta1 < theta_max < theta2 < 2*pi where f = lambda."""
    t1, t2 = root_angles_array(sym, [lam])
    return float(t1[0]), float(t2[0])


# ---------------------------------------------------------------- lambda-shifts


def _r_values(sym, theta, lams, t1, t2):
    # R = -(f - lambda) / (4 sin((theta-t1)/2) sin((theta-t2)/2)), broadcasting
    return -(sym(theta) - lams) / (4.0 * np.sin((theta - t1) / 2) * np.sin((theta - t2) / 2))


_HALF_ANGLE_CACHE: dict = {}


def _half_angles(size: int):
    tab = _HALF_ANGLE_CACHE.get(size)
    if tab is None:
        half = circle_angles(size) / 2
        s, c = np.sin(half), np.cos(half)
        tab = (s * s, s * c, c * c)
        _HALF_ANGLE_CACHE[size] = tab
    return tab


def log_r_samples(sym: SmoothUnimodalSymbol, lams, t1, t2, size: int = DEFAULT_GRID) -> np.ndarray:
    """ln R(e^{i theta}; lambda) on the size-point grid, one row per lambda.

    Grid points within ``R_LIMIT_STEP`` of a root are filled by linear
    interpolation between R(theta_j - h) and R(theta_j + h), which is where the
    direct quotient loses precision.
    """
    lams = np.atleast_1d(np.asarray(lams, dtype=float))
    t1 = np.atleast_1d(np.asarray(t1, dtype=float))
    t2 = np.atleast_1d(np.asarray(t2, dtype=float))
    fvals = sym.grid_values(size)
    ss, sc, cc = _half_angles(size)
    # 4 sin((x-t1)/2) sin((x-t2)/2) expanded in sin(x/2), cos(x/2)
    a = (np.cos(t1 / 2) * np.cos(t2 / 2))[:, None]
    b = (-np.sin((t1 + t2) / 2))[:, None]
    c = (np.sin(t1 / 2) * np.sin(t2 / 2))[:, None]
    denom = ss * a
    denom += sc * b
    denom += cc * c
    denom *= -4.0
    with np.errstate(divide="ignore", invalid="ignore"):
        R = (fvals[None, :] - lams[:, None]) / denom
    h = R_LIMIT_STEP
    step = TWO_PI / size
    rows = np.arange(len(lams))
    for tj in (t1, t2):
        base = np.floor(tj / step).astype(int)
        for off in (-1, 0, 1, 2):
            cols = base + off
            d = cols * step - tj
            near = np.abs(d) < h
            if not near.any():
                continue
            r, col, dd = rows[near], cols[near] % size, d[near]
            r_lo = _r_values(sym, tj[r] - h, lams[r], t1[r], t2[r])
            r_hi = _r_values(sym, tj[r] + h, lams[r], t1[r], t2[r])
            R[r, col] = r_lo + (dd + h) * (r_hi - r_lo) / (2 * h)
    if not np.all(R > 0):
        raise DomainError("R(theta; lambda) failed to be positive; symbol not unimodal enough")
    return np.log(R, out=R)


def shift_smooth(sym: SmoothUnimodalSymbol, lam: float, size: int = DEFAULT_GRID) -> FHDescriptor:
    """Descriptor of f - lambda for a smooth unimodal symbol.

    Singular points z_1, z_2 are the roots of f = lambda with alpha = 1/2 and
    beta = 1/2 at both; f - lambda is ``desc.lowered(2)``.  The smooth part is
    V = ln R + i(theta1 - theta2)/2 + i*pi.
    """
    t1, t2 = root_angles(sym, lam)
    K = size // 4
    c = coeffs_from_fft(log_r_samples(sym, lam, t1, t2, size)[0], K)
    c[K] += 1j * (0.5 * (t1 - t2) + np.pi)
    return FHDescriptor(
        v=FourierSeries(c),
        thetas=np.array([0.0, t1, t2]),
        alphas=np.array([0.0, 0.5, 0.5]),
        betas=np.array([0.0, 0.5, 0.5]),
        meta={"kind": "smooth", "lam": lam, "j0": 2},
    )


def gamma_lambda(gamma: float, lam) -> float | np.ndarray:
    """gamma^(lambda) = ln((e^{2 pi gamma} - lambda)/(lambda - 1)) / (2 pi)."""
    lam_arr = np.asarray(lam, dtype=float)
    high = math.exp(TWO_PI * gamma)
    if np.any(lam_arr <= 1.0) or np.any(lam_arr >= high):
        raise DomainError(f"lambda must lie in the open gap (1, {high})")
    out = np.log((high - lam_arr) / (lam_arr - 1.0)) / TWO_PI
    return float(out) if out.ndim == 0 else out


def shift_two_level(sym: TwoLevelSymbol, lam: float) -> FHDescriptor:
    """Descriptor of f - lambda for a lambda inside the gap (1, e^{2 pi gamma}).

    beta_1 = 1/2 + i gamma^(lambda), beta_2 = 1/2 - i gamma^(lambda), alpha = 0,
    constant smooth part e^{V_0} = -(lambda - 1) (z_1/z_2)^{beta_1}.
    """
    g = gamma_lambda(sym.gamma, lam)
    b1 = 0.5 + 1j * g
    v0 = math.log(lam - 1.0) + 1j * np.pi + 1j * b1 * (sym.theta1 - sym.theta2)
    return FHDescriptor(
        v=FourierSeries(np.array([v0])),
        thetas=np.array([0.0, sym.theta1, sym.theta2]),
        alphas=np.zeros(3),
        betas=np.array([0.0, b1, np.conj(b1)]),
        meta={"kind": "two_level", "lam": lam, "j0": 2, "gamma_lambda": g},
    )


# ---------------------------------------------------------------- near-periodicity


def omega(ell: int, m: int) -> int:
    """Near-period for an arc boundary at s = pi*ell/m with coprime ell, m."""
    if m == 0:
        raise DomainError("m must be nonzero")
    if ell == 0:
        return 2
    if math.gcd(ell, m) != 1:
        raise DomainError("ell and m must be coprime")
    return abs(m) if (ell % 2 and m % 2) else 2 * abs(m)


def near_period(sym: TwoLevelSymbol) -> int:
    """q for an arc of length 2*pi*p/q."""
    if sym.rational_arc is None:
        raise UnsupportedError("near-period needs a rational arc length 2*pi*p/q")
    return sym.rational_arc[1]


# ---------------------------------------------------------------- named symbols and config

SQRTDIST_R = 0.85


def tridiag3() -> SmoothUnimodalSymbol:
    """3 - 2 cos(theta); T_n(f) is tridiagonal."""
    return SmoothUnimodalSymbol.from_log_function(lambda t: np.log(3.0 - 2.0 * np.cos(t)), 64, "tridiag3")


def expcos() -> SmoothUnimodalSymbol:
    """exp(-cos(theta)): minimum e^{-1} at 0, maximum e at pi."""
    c = np.zeros(2 * 64 + 1, dtype=complex)
    c[63] = c[65] = -0.5
    return SmoothUnimodalSymbol.from_log_coefficients(FourierSeries(c), "expcos")


def sqrtdist(r: float = SQRTDIST_R) -> SmoothUnimodalSymbol:
    """|1 - r e^{i theta}|: analytic only in a strip of width ln(1/r).

    Asymptotic errors for this symbol decay like r^n, slowly enough to be
    resolved in double precision at moderate n.
    """
    return SmoothUnimodalSymbol.from_log_function(
        lambda t: np.log(np.abs(1.0 - r * np.exp(1j * t))), 512, "sqrtdist"
    )


def twolevel_p1q4() -> TwoLevelSymbol:
    """Levels 1 and 2 on an arc of length pi/2 centered on pi."""
    return TwoLevelSymbol.from_rational(1, 4, math.log(2.0) / TWO_PI)


NAMED_SYMBOLS = {
    "tridiag3": tridiag3,
    "expcos": expcos,
    "sqrtdist": sqrtdist,
    "twolevel-p1q4": twolevel_p1q4,
}

_SMOOTH_KEYS = {"kind", "name", "v_coeffs", "k"}
_TWO_LEVEL_KEYS = {"kind", "name", "theta1", "theta2", "gamma", "p", "q"}
_FH_KEYS = {"kind", "name", "v_coeffs", "k", "thetas", "alphas", "betas"}


def named_symbol(name: str):
    try:
        return NAMED_SYMBOLS[name]()
    except KeyError:
        raise DomainError(f"unknown symbol {name!r}; known: {', '.join(NAMED_SYMBOLS)}") from None


def _complex(text: str) -> complex:
    try:
        return complex(text.strip().replace(" ", ""))
    except ValueError:
        raise PreconditionError(f"not a number: {text!r}") from None


def _parse_v_coeffs(cfg: dict) -> FourierSeries:
    pairs = {}
    for item in cfg.get("v_coeffs", "").split(","):
        if not item.strip():
            continue
        try:
            k, val = item.split(":")
            k = int(k)
        except ValueError:
            raise PreconditionError(f"v_coeffs entries must read k:value, got {item!r}") from None
        if k < 0:
            raise PreconditionError("give v_coeffs for k >= 0 only")
        pairs[k] = _complex(val)
    K = int(cfg.get("k", max(pairs, default=0)))
    if max(pairs, default=0) > K:
        raise PreconditionError("coefficient index exceeds truncation K")
    c = np.zeros(2 * K + 1, dtype=complex)
    for k, val in pairs.items():
        c[K + k] = val
        c[K - k] = np.conj(val)
    c[K] = c[K].real
    return FourierSeries(c)


def parse_symbol_config(text: str):
    """Read a symbol from ``key = value`` lines.

    ``kind = smooth`` takes ``v_coeffs`` as comma-separated ``k:value`` pairs
    for k >= 0 (complex literals allowed; V_{-k} = conj(V_k) is implied) and
    an optional truncation ``K``.  ``kind = two_level`` takes ``gamma`` with
    either ``p``/``q`` (plus optional ``theta1``) or ``theta1``/``theta2``.
    ``kind = fisher_hartwig`` takes comma-separated ``thetas``, ``alphas`` and
    ``betas`` (the first angle must be 0) and an optional smooth part given
    by ``v_coeffs`` as for ``smooth``.  Unknown keys are rejected.
    """
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        cp.read_string("[symbol]\n" + text)
    except configparser.Error as exc:
        raise PreconditionError(f"malformed symbol config: {exc}") from None
    cfg = dict(cp["symbol"])
    kind = cfg.get("kind")
    if kind == "smooth":
        unknown = set(cfg) - _SMOOTH_KEYS
        if unknown:
            raise PreconditionError(f"unknown keys for smooth symbol: {sorted(unknown)}")
        v = _parse_v_coeffs(cfg)
        return SmoothUnimodalSymbol.from_log_coefficients(v, cfg.get("name", "custom"))
    if kind == "fisher_hartwig":
        unknown = set(cfg) - _FH_KEYS
        if unknown:
            raise PreconditionError(f"unknown keys for Fisher-Hartwig symbol: {sorted(unknown)}")
        try:
            thetas = [float(x) for x in cfg["thetas"].split(",")]
            alphas = [_complex(x) for x in cfg["alphas"].split(",")]
            betas = [_complex(x) for x in cfg["betas"].split(",")]
        except KeyError as exc:
            raise PreconditionError(f"missing key {exc.args[0]!r}") from None
        return FHDescriptor(
            v=_parse_v_coeffs(cfg),
            thetas=np.array(thetas),
            alphas=np.array(alphas),
            betas=np.array(betas),
            meta={"kind": "fisher_hartwig", "name": cfg.get("name", "custom")},
        )
    if kind == "two_level":
        unknown = set(cfg) - _TWO_LEVEL_KEYS
        if unknown:
            raise PreconditionError(f"unknown keys for two-level symbol: {sorted(unknown)}")
        try:
            gamma = float(cfg["gamma"])
            if "p" in cfg or "q" in cfg:
                th1 = float(cfg["theta1"]) if "theta1" in cfg else None
                return TwoLevelSymbol.from_rational(int(cfg["p"]), int(cfg["q"]), gamma, th1)
            return TwoLevelSymbol(float(cfg["theta1"]), float(cfg["theta2"]), gamma)
        except KeyError as exc:
            raise PreconditionError(f"missing key {exc.args[0]!r} for two-level symbol") from None
        except ValueError as exc:
            if isinstance(exc, FHToeplitzError):
                raise
            raise PreconditionError(f"bad number in two-level symbol: {exc}") from None
    raise PreconditionError(f"kind must be 'smooth', 'two_level' or 'fisher_hartwig', got {kind!r}")
