import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fhtoeplitz.errors import PreconditionError
from fhtoeplitz.fourier import (
    CircleGrid,
    FourierSeries,
    circle_angles,
    fourier_coeffs,
    szego_sum,
    wiener_hopf_eval,
)


def test_cos_coefficients():
    c = fourier_coeffs(CircleGrid.from_function(np.cos, 64), 5)
    expected = np.zeros(11, dtype=complex)
    expected[4] = expected[6] = 0.5
    np.testing.assert_allclose(c.coeffs, expected, atol=1e-15)


def test_constant():
    c = fourier_coeffs(CircleGrid(np.full(16, 2.5 + 0j)), 3)
    assert c[0] == pytest.approx(2.5)
    assert np.all(np.abs(np.delete(c.coeffs, 3)) < 1e-15)


def test_undersized_grid():
    with pytest.raises(PreconditionError):
        fourier_coeffs(CircleGrid(np.ones(16)), 5)
    with pytest.raises(PreconditionError):
        CircleGrid(np.ones(12))


def test_against_trapezoid_quadrature():
    f = lambda t: np.exp(-np.cos(t)) * (1.2 + 0.3 * np.sin(2 * t))
    c = fourier_coeffs(CircleGrid.from_function(lambda t: np.log(f(t)), 1024), 100)
    rng = np.random.default_rng(7)
    t = np.linspace(0, 2 * np.pi, 4097)[:-1]
    for k in rng.integers(-100, 101, size=10):
        ref = np.mean(np.log(f(t)) * np.exp(-1j * k * t))
        assert abs(c[int(k)] - ref) < 1e-10


def test_indexing_out_of_range_is_zero():
    s = FourierSeries(np.array([1, 2, 3]))
    assert s[5] == 0 and s[-1] == 1 and s[1] == 3
    np.testing.assert_array_equal(s.take([-2, 0, 2]), [0, 2, 0])


def test_even_length_rejected():
    with pytest.raises(PreconditionError):
        FourierSeries(np.ones(4))


def test_evaluation_paths_agree():
    rng = np.random.default_rng(3)
    s = FourierSeries(rng.normal(size=41) + 1j * rng.normal(size=41))
    theta = circle_angles(64)
    direct = s(theta)
    # enough points to go through the Horner branch
    many = s(np.tile(theta, 200))[:64]
    np.testing.assert_allclose(direct, many, atol=1e-11)


def test_wiener_hopf_trivial():
    assert wiener_hopf_eval(FourierSeries(np.zeros(5)), 0.3 + 0.1j) == (1, 1)
    bp, bm = wiener_hopf_eval(FourierSeries(np.array([0.5, 0, 0.5])), 1.0)
    assert bp == pytest.approx(math.exp(0.5)) and bm == pytest.approx(math.exp(0.5))


def test_szego_sum_cos():
    s, _ = szego_sum(FourierSeries(np.array([0.5, 0, 0.5])))
    assert s == pytest.approx(0.25)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False), min_size=3, max_size=15))
def test_roundtrip(values):
    if len(values) % 2 == 0:
        values = values[:-1]
    s = FourierSeries(np.array(values))
    back = fourier_coeffs(CircleGrid.from_function(s, 64), s.K)
    np.testing.assert_allclose(back.coeffs, s.coeffs, atol=1e-13)
