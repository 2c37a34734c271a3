import math
import warnings

import numpy as np
import pytest

from iceefp.conjecture import efp_conjecture
from iceefp.numerics.fredholm import (
    AccuracyWarning,
    ContourError,
    TWResult,
    airy_kernel,
    airy_kernel_integral,
    airy_nystrom_eigs,
    e_nystrom_matrix,
    fredholm_det_E,
    kernel_E,
    kernel_E_poly,
    tw2,
)
from iceefp.numerics.quadrature import NystromGrid, fredholm_det, log_det_series


# ---------------------------------------------------------------------------
# quadrature


@pytest.mark.parametrize("kind", ["truncate", "exp"])
def test_half_line_integrates_exponential(kind):
    g = NystromGrid.half_line(1.0, 80, 40.0 if kind == "truncate" else 1.0, kind)
    approx = np.sum(g.weights * np.exp(-g.nodes))
    assert approx == pytest.approx(math.exp(-1.0), rel=1e-6 if kind == "exp" else 1e-14)


def test_grid_validation():
    with pytest.raises(ValueError):
        NystromGrid.half_line(0.0, 0, 1.0)
    with pytest.raises(ValueError):
        NystromGrid.half_line(0.0, 10, -1.0)
    with pytest.raises(ValueError):
        NystromGrid.half_line(0.0, 10, 1.0, "cosh")


def test_rank_one_fredholm_det():
    # det(1 - c e^{-x-y}) on [0, inf) = 1 - c/2
    g = NystromGrid.half_line(0.0, 60, 45.0)
    val = fredholm_det(lambda x, y: 0.7 * np.exp(-x - y), g)
    assert val == pytest.approx(1 - 0.35, abs=1e-13)


# ---------------------------------------------------------------------------
# Airy kernel and F2


def test_airy_kernel_symmetric():
    for a, b in [(0.0, 1.0), (-2.5, 0.3), (1.0, 4.0)]:
        assert airy_kernel(a, b) == pytest.approx(airy_kernel(b, a), rel=1e-14)


@pytest.mark.parametrize("t", [-3.0, 0.0, 1.5])
def test_airy_kernel_diagonal_limit(t):
    near = airy_kernel(t, t + 1e-8)
    ratio = airy_kernel(t, t + 1e-3)
    assert near == pytest.approx(airy_kernel(t, t), abs=1e-8)
    assert near == pytest.approx(ratio, abs=1e-3)


@pytest.mark.parametrize("t1, t2", [(0.0, 1.0), (-1.0, 0.5), (2.0, 2.0)])
def test_airy_kernel_integral_form(t1, t2):
    assert airy_kernel_integral(t1, t2) == pytest.approx(airy_kernel(t1, t2), abs=1e-12)


def test_tw2_tails():
    assert tw2(6.0) == pytest.approx(1.0, abs=1e-8)
    assert abs(tw2(-10.0)) < 1e-6


@pytest.mark.parametrize("sigma", [-4.0, -2.0, 0.0, 2.0])
def test_tw2_grid_refinement(sigma):
    assert tw2(sigma, 40) == pytest.approx(tw2(sigma, 80), abs=1e-8)


def test_tw2_monotone():
    sig = np.linspace(-6, 4, 20)
    vals = np.array([tw2(s) for s in sig])
    assert np.all(np.diff(vals) > 0)
    assert np.all((vals >= 0) & (vals <= 1))


def _gl(a, b, n=60):
    x, w = np.polynomial.legendre.leggauss(n)
    return a + 0.5 * (b - a) * (x + 1), 0.5 * (b - a) * w


def test_tw2_mean_and_variance():
    # moments of the GUE Tracy-Widom law: mean -1.7710868074, variance 0.8131947928
    # E[X] = int_0^inf (1-F) - int_-inf^0 F, E[X^2] = 2 int_0^inf s(1-F) - 2 int_-inf^0 s F;
    # the integrands jump at 0, so each side gets its own Gauss-Legendre rule
    xl, wl = _gl(-12.0, 0.0)
    xr, wr = _gl(0.0, 7.0)
    Fl = np.array([tw2(x, 50) for x in xl])
    Gr = 1 - np.array([tw2(x, 50) for x in xr])
    mean = np.sum(wr * Gr) - np.sum(wl * Fl)
    second = 2 * np.sum(wr * xr * Gr) - 2 * np.sum(wl * xl * Fl)
    assert mean == pytest.approx(-1.7710868074, abs=1e-8)
    assert second - mean**2 == pytest.approx(0.8131947928, abs=1e-8)


def test_tw2_check_mode():
    res = tw2(-1.0, 40, check=True)
    assert isinstance(res, TWResult)
    assert res.meta["refined_difference"] < 1e-8
    with warnings.catch_warnings():
        warnings.simplefilter("error", AccuracyWarning)
        tw2(0.0, 60, check=True)
    with pytest.raises(ValueError):
        tw2(0.0, 10)


@pytest.mark.parametrize("sigma", [-4.0, 0.0, 3.0])
def test_airy_operator_positive(sigma):
    assert airy_nystrom_eigs(sigma).min() >= -1e-10


# ---------------------------------------------------------------------------
# E-kernel


@pytest.mark.parametrize("N, s, t1, t2", [(8, 2, 0.5, 3.0), (10, 4, 2.0, 0.1), (6, 1, 1.0, 7.0)])
def test_contour_kernel_matches_polynomial(N, s, t1, t2):
    assert kernel_E(N, s, t1, t2) == pytest.approx(float(kernel_E_poly(N, s, t1, t2)), abs=1e-13)


def test_contour_radius_validation():
    with pytest.raises(ContourError):
        kernel_E(6, 2, 0.0, 0.0, radius=0.6)


def test_s1_kernel_rank_one():
    M = e_nystrom_matrix(7, 1, 30)
    sv = np.linalg.svd(M, compute_uv=False)
    assert sv[1] < 1e-12 * sv[0]


@pytest.mark.parametrize("N, s, n, tol", [(6, 2, 40, 1e-8), (8, 2, 60, 1e-8), (10, 4, 60, 1e-7), (12, 3, 60, 1e-7)])
def test_fredholm_det_E_matches_exact(N, s, n, tol):
    assert fredholm_det_E(N, s, n) == pytest.approx(float(efp_conjecture(N, s)), abs=tol)


def test_trace_expansion_matches_det():
    M = e_nystrom_matrix(9, 2, 60)
    assert np.max(np.abs(np.linalg.eigvals(M))) < 1
    det = np.linalg.det(np.eye(len(M)) - M)
    approx3 = log_det_series(M, 3)
    full = log_det_series(M, 200)
    assert full == pytest.approx(det, abs=1e-12)
    # three traces already capture the bulk of the log-determinant
    assert abs(approx3 - det) < abs(1 - det)
