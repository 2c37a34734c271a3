import numpy as np
import pytest
from scipy import special

from iceefp.numerics.airy import (
    SERIES_CUTOFF,
    airy,
    airy_asymptotic,
    airy_contour,
    airy_pair,
    airy_series,
)

GRID = np.linspace(-50, 50, 401)


@pytest.mark.parametrize("t", GRID)
def test_matches_scipy(t):
    ai, aip, _, _ = special.airy(t)
    got, gotp = airy_pair(t)
    scale = max(1.0, abs(t) ** 0.25)
    assert got == pytest.approx(ai, rel=1e-11, abs=1e-13)
    assert gotp == pytest.approx(aip, rel=1e-11, abs=1e-13 * scale)


@pytest.mark.parametrize("t", [-2.0, 0.0, 2.0, -5.5, 3.3])
def test_series_vs_contour_integral(t):
    assert airy_series(t)[0] == pytest.approx(airy_contour(t), abs=1e-12)


@pytest.mark.parametrize("t", [-SERIES_CUTOFF, -9.0, SERIES_CUTOFF, 9.0])
def test_regimes_overlap(t):
    s, sp = airy_series(t)
    a, ap = airy_asymptotic(t)
    assert a == pytest.approx(s, rel=1e-10, abs=1e-13)
    assert ap == pytest.approx(sp, rel=1e-10, abs=1e-12)


def test_decay():
    ts = np.linspace(1.0, 30.0, 300)
    vals = airy(ts)
    assert np.all(vals > 0)
    assert np.all(np.diff(vals) < 0)
    assert airy_pair(200.0) == (0.0, -0.0)


def test_array_shape_and_derivative():
    t = np.array([[0.0, 1.0], [-1.0, 2.0]])
    assert airy(t).shape == (2, 2)
    assert airy(t, derivative=True)[0, 0] == pytest.approx(special.airy(0.0)[1], rel=1e-14)


def test_airy_equation():
    # Ai'' = t Ai, checked by central differences of Ai'
    for t in [-3.0, 0.5, 4.0, 10.0]:
        h = 1e-5
        second = (airy_pair(t + h)[1] - airy_pair(t - h)[1]) / (2 * h)
        assert second == pytest.approx(t * airy_pair(t)[0], rel=1e-6, abs=1e-9)
