import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fhtoeplitz.errors import ConsistencyError
from fhtoeplitz.roots import bisect_increasing, solve_increasing


def test_bisection_cube_roots():
    t = np.array([-8.0, 1.0, 27.0])
    x = bisect_increasing(lambda x, idx: x**3, -10, 10, t)
    np.testing.assert_allclose(x, [-2, 1, 3], rtol=1e-15)


def test_illinois_matches_bisection():
    f = lambda x: np.arctan(5 * x) + x
    t = np.linspace(-1.5, 1.5, 11)
    x = solve_increasing(lambda x, idx: f(x), -2.0, 2.0, f(-2.0), f(2.0), t, ftol=1e-14)
    np.testing.assert_allclose(f(x), t, atol=1e-13)


def test_illinois_rejects_bad_bracket():
    with pytest.raises(ConsistencyError):
        solve_increasing(lambda x, idx: x, 0.0, 1.0, 0.0, 1.0, [2.0])


def test_singular_endpoint_never_evaluated():
    # tan is infinite at pi/2; only interior points may be sampled
    def f(x, idx):
        assert np.all(np.abs(x) < np.pi / 2)
        return np.tan(x)

    x = solve_increasing(f, -np.pi / 2, np.pi / 2, -np.inf, np.inf, [3.0])
    assert np.tan(x[0]) == pytest.approx(3.0, rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=0.1, max_value=9.9), st.floats(min_value=1.0, max_value=9.0))
def test_illinois_property(target, power):
    f = lambda x: x**power
    x = solve_increasing(lambda x, idx: f(x), 0.0, 10.0, 0.0, f(10.0), [target**power], ftol=0.0)
    assert x[0] == pytest.approx(target, rel=1e-12)
