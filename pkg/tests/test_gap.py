import math

import numpy as np
import pytest

from fhtoeplitz import gap
from fhtoeplitz.errors import DomainError
from fhtoeplitz.symbols import named_symbol

EPS = 0.1


@pytest.fixture(scope="module")
def sym():
    return named_symbol("twolevel-p1q4")


@pytest.fixture(scope="module")
def spectra(sym):
    return {n: gap.exact_gap_spectrum(sym, n, EPS) for n in (128, 132, 256, 260)}


def test_h_midpoint(sym):
    assert gap.h(sym, 1.5) == 0
    assert gap.H_n(sym, 1.5, 100) == pytest.approx(0, abs=1e-14)


def test_H_doubling(sym):
    lam = 1.3
    g = gap.gamma_lambda(sym.gamma, lam)
    assert gap.H_n(sym, lam, 200) - gap.H_n(sym, lam, 100) == pytest.approx(2 * g * math.log(2))


def test_H_monotone(sym):
    lams = np.linspace(1.01, 1.99, 200)
    assert np.all(np.diff(gap.H_n(sym, lams, 256)) < 0)


def test_H_domain(sym):
    with pytest.raises(DomainError):
        gap.H_n(sym, 1.5, 0)
    with pytest.raises(DomainError):
        gap.H_n(sym, 2.5, 64)


def test_gap_interval(sym):
    assert gap.gap_interval(sym, 0.1) == (1.1, pytest.approx(1.9))
    with pytest.raises(DomainError):
        gap.gap_interval(sym, 0.6)


def test_prediction_pairs_with_exact(sym, spectra):
    n = 256
    pred = gap.predict_gap_spectrum(sym, n, EPS)
    exact = spectra[n]
    assert list(pred.k) == list(exact.k)
    assert np.max(np.abs(pred.lam_hat - exact.lam_hat)) < 0.3 / math.log(n)
    assert np.max(np.abs(pred.phase_residual)) < 1e-10


def test_count_grows_logarithmically(sym):
    # at eps = 0.1 the phase range grows by less than one between 128 and 1024
    counts = [len(gap.predict_gap_spectrum(sym, n, 0.01)) for n in (128, 256, 512, 1024)]
    assert counts == sorted(counts)
    assert 1 <= counts[-1] - counts[0] <= 6


def test_phase_residual_shrinks(spectra):
    r128 = np.max(np.abs(spectra[128].phase_residual))
    r256 = np.max(np.abs(spectra[256].phase_residual))
    assert r256 < r128 < 0.5


def test_near_periodicity(sym, spectra):
    for n in (128, 256):
        m = gap.match_near_periodic(spectra[n], spectra[n + 4], 4, 1)
        assert m.pairs and m.scaled_max() < 2.0


def test_wrong_period_is_far(sym, spectra):
    wrong = gap.exact_gap_spectrum(sym, 259, EPS)
    m = gap.match_near_periodic(spectra[256], wrong, 3, 1)
    assert min(m.nearest_neighbor) * math.log(256) > 0.02


def test_self_match(spectra):
    m = gap.match_near_periodic(spectra[128], spectra[128], 0, 0)
    assert np.all(m.distances == 0) and not m.unmatched


def test_spacing_band_and_coverage(sym, spectra):
    band = gap.spacing_band([spectra[128], spectra[256]])
    assert band["band_lo"] > 0 and band["band_hi"] < 10
    for n in (128, 256):
        assert gap.coverage_check(sym, spectra[n], 3.0 / math.log(n))["covered"]


def test_gap_E_n_vanishes_at_eigenvalue(sym, spectra):
    lam = float(spectra[128].lam_hat[1])
    at = gap.gap_E_n(sym, lam, 128)
    off = gap.gap_E_n(sym, lam + 0.05, 128)
    assert abs(at.real) < 1e-6 < abs(off.real)
