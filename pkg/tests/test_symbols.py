import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fhtoeplitz.errors import DomainError, PreconditionError, UnsupportedError
from fhtoeplitz.fourier import FourierSeries, circle_angles
from fhtoeplitz.symbols import (
    FHDescriptor,
    SmoothUnimodalSymbol,
    TwoLevelSymbol,
    beta_seminorm,
    gamma_lambda,
    named_symbol,
    near_period,
    omega,
    parse_symbol_config,
    root_angles,
    shift_smooth,
    shift_two_level,
)

LN2_GAMMA = math.log(2) / (2 * math.pi)


@pytest.fixture(scope="module")
def tridiag():
    return named_symbol("tridiag3")


@pytest.fixture(scope="module")
def generic():
    v = np.zeros(9, dtype=complex)
    # V = -cos(theta) + sin(2 theta)/4 - sin(theta)/2, asymmetric with its minimum at 0
    v[3] = v[5] = -0.5
    v[6], v[2] = 1 / 8j, -1 / 8j
    v[5] += -1 / 4j
    v[3] += 1 / 4j
    return SmoothUnimodalSymbol.from_log_coefficients(FourierSeries(v), "generic")


def test_tridiag_extrema(tridiag):
    assert tridiag.L == pytest.approx(1, abs=1e-12)
    assert tridiag.M == pytest.approx(5, abs=1e-12)
    assert tridiag.theta_max == pytest.approx(math.pi)


def test_root_angles_examples(tridiag):
    np.testing.assert_allclose(root_angles(tridiag, 3.0), (math.pi / 2, 3 * math.pi / 2), atol=1e-12)
    np.testing.assert_allclose(root_angles(tridiag, 2.0), (math.pi / 3, 5 * math.pi / 3), atol=1e-12)


def test_root_angles_generic(generic):
    lam = 0.5 * (generic.L + generic.M)
    t1, t2 = root_angles(generic, lam)
    assert 0 < t1 < generic.theta_max < t2 < 2 * math.pi
    assert abs(generic(t1) - lam) < 1e-12 and abs(generic(t2) - lam) < 1e-12


@pytest.mark.parametrize("lam", [0.5, 6.0, -1.0])
def test_root_angles_domain(tridiag, lam):
    with pytest.raises(DomainError):
        root_angles(tridiag, lam)
    with pytest.raises(DomainError):
        root_angles(tridiag, tridiag.L)


def test_non_unimodal_rejected():
    v = np.zeros(5, dtype=complex)
    v[0] = v[4] = 0.5  # cos(2 theta): two maxima
    with pytest.raises(DomainError):
        SmoothUnimodalSymbol.from_log_coefficients(FourierSeries(v))


def test_shift_smooth_tridiag_has_flat_remainder(tridiag):
    for lam in (1.5, 3.0, 4.7):
        d = shift_smooth(tridiag, lam)
        t1, t2 = d.thetas[1:]
        rest = np.delete(d.v.coeffs, d.v.K)
        assert np.max(np.abs(rest)) < 1e-10
        assert d.v[0] == pytest.approx(1j * ((t1 - t2) / 2 + math.pi), abs=1e-10)


@pytest.mark.parametrize("name", ["tridiag3", "expcos", "sqrtdist"])
def test_shift_smooth_reconstruction(name):
    sym = named_symbol(name)
    lam = sym.L + 0.37 * (sym.M - sym.L)
    d = shift_smooth(sym, lam)
    t1, t2 = d.thetas[1:]
    theta = circle_angles(512) + 1e-3
    far = (np.abs(theta - t1) > 1e-2) & (np.abs(theta - t2) > 1e-2)
    theta = theta[far]
    rebuilt = (
        np.exp(d.v(theta))
        * 4 * np.sin((theta - t1) / 2) * np.sin((theta - t2) / 2)
        * np.exp(-0.5j * (t1 - t2))
    )
    np.testing.assert_allclose(rebuilt, sym(theta) - lam, atol=1e-10)
    # the lowered descriptor is f - lambda itself
    np.testing.assert_allclose(d.lowered(2)(theta), sym(theta) - lam, atol=1e-10)


def test_gamma_lambda_examples():
    assert gamma_lambda(LN2_GAMMA, 1.5) == pytest.approx(0, abs=1e-15)
    assert gamma_lambda(LN2_GAMMA, 4 / 3) == pytest.approx(LN2_GAMMA, rel=1e-13)
    lam = np.linspace(1.01, 1.99, 100)
    assert np.all(np.diff(gamma_lambda(LN2_GAMMA, lam)) < 0)
    for bad in (1.0, 2.0, 0.5):
        with pytest.raises(DomainError):
            gamma_lambda(LN2_GAMMA, bad)


def test_shift_two_level_matches_symbol():
    sym = named_symbol("twolevel-p1q4")
    for lam in (1.2, 1.5, 1.8):
        d = shift_two_level(sym, lam)
        theta = np.linspace(0.05, 2 * math.pi - 0.05, 97)
        theta = theta[(np.abs(theta - sym.theta1) > 1e-3) & (np.abs(theta - sym.theta2) > 1e-3)]
        np.testing.assert_allclose(d.lowered(2)(theta), sym(theta) - lam, atol=1e-12)


def test_seminorm_examples():
    v = FourierSeries(np.zeros(1))
    one = FHDescriptor(v, [0.0, 1.0], [0, 0], [0, 0.5])
    assert beta_seminorm(one) == 0.0
    pair = FHDescriptor(v, [0.0, 1.0, 2.0], [0, 0, 0], [0, 0.5 + 0.3j, 0.5 - 0.3j])
    assert beta_seminorm(pair) == 0.0
    spread = FHDescriptor(v, [0.0, 1.0, 2.0], [0.1, 0, 0], [0.2, 0.5, -0.3])
    assert beta_seminorm(spread) == pytest.approx(0.8)


def test_descriptor_validation():
    v = FourierSeries(np.zeros(1))
    with pytest.raises(DomainError):
        FHDescriptor(v, [0.5, 1.0], [0, 0], [0, 0])
    with pytest.raises(DomainError):
        FHDescriptor(v, [0.0, 2.0, 1.0], [0, 0, 0], [0, 0, 0])
    with pytest.raises(DomainError):
        FHDescriptor(v, [0.0, 1.0], [0, -0.6], [0, 0])
    with pytest.raises(PreconditionError):
        FHDescriptor(v, [0.0, 1.0], [0], [0, 0])


def test_two_level_coefficients():
    sym = TwoLevelSymbol(math.pi / 2, math.pi, LN2_GAMMA)
    c = sym.coefficients(40)
    assert c[0] == pytest.approx(5 / 4)
    # closed form against quadrature of the piecewise constant
    t = (np.arange(1 << 16) + 0.5) * 2 * math.pi / (1 << 16)
    for k in (1, 2, 7, -3):
        ref = np.mean(sym(t) * np.exp(-1j * k * t))
        assert abs(c[k] - ref) < 1e-4


def test_two_level_validation():
    with pytest.raises(DomainError):
        TwoLevelSymbol(2.0, 1.0, 0.1)
    with pytest.raises(DomainError):
        TwoLevelSymbol(1.0, 2.0, -0.1)
    with pytest.raises(DomainError):
        TwoLevelSymbol.from_rational(2, 4, 0.1)


def test_near_period_and_omega():
    half = TwoLevelSymbol.from_rational(1, 2, 0.1)
    assert near_period(half) == 2 == omega(0, 3)
    assert near_period(named_symbol("twolevel-p1q4")) == 4
    with pytest.raises(UnsupportedError):
        near_period(TwoLevelSymbol(1.0, 2.0, 0.1))
    # odd ell, m: arc pi (m - ell)/m = 2 pi p / q with q = m
    assert omega(1, 3) == 3
    assert near_period(TwoLevelSymbol.from_rational(1, 3, 0.1)) == 3
    # ell or m even: q = 2m
    assert omega(1, 4) == 8
    assert near_period(TwoLevelSymbol.from_rational(3, 8, 0.1)) == 8


def test_complement():
    sym = named_symbol("twolevel-p1q4")
    comp = sym.complement()
    assert comp.arc == pytest.approx(2 * math.pi - sym.arc)
    assert comp.rational_arc == (3, 4)


def test_named_symbol_unknown():
    with pytest.raises(DomainError):
        named_symbol("nope")


def test_config_parsing():
    s = parse_symbol_config("kind = smooth\nv_coeffs = 0:0.1, 1:-0.4\nname = mine\n")
    assert isinstance(s, SmoothUnimodalSymbol) and s.name == "mine"
    t = parse_symbol_config("kind = two_level\ngamma = 0.11\np = 1\nq = 4\n")
    assert isinstance(t, TwoLevelSymbol) and t.rational_arc == (1, 4)
    d = parse_symbol_config("kind = fisher_hartwig\nthetas = 0, 2\nalphas = 0, 0.25\nbetas = 0, 0.2j\n")
    assert isinstance(d, FHDescriptor) and d.m == 1
    for bad in (
        "kind = smooth\nbogus = 1\n",
        "kind = circle\n",
        "kind = two_level\np = 1\nq = 4\n",
        "kind = fisher_hartwig\nthetas = 0\n",
        "no equals sign here",
    ):
        with pytest.raises((PreconditionError, DomainError)):
            parse_symbol_config(bad)


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=0.05, max_value=0.95))
def test_root_angles_property(frac):
    sym = named_symbol("expcos")
    lam = sym.L + frac * (sym.M - sym.L)
    t1, t2 = root_angles(sym, lam)
    assert abs(sym(t1) - lam) < 1e-12 and abs(sym(t2) - lam) < 1e-12
    # exp(-cos) is even, so the roots are mirror images
    assert t1 + t2 == pytest.approx(2 * math.pi, abs=1e-10)
