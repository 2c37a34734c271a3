import math
from fractions import Fraction

import numpy as np
import pytest

from iceefp.boundary import h_ice, pochhammer
from iceefp.numerics.asymptotics import (
    SCALE,
    Y_C,
    arctic_curve,
    arctic_samples,
    c_amp,
    c_amp_direct,
    c_appendix,
    central_binomial_prefactor,
    g_phase,
    g_prime,
    h_asymptotic,
    rho_amp,
    rho_appendix,
    s_continuous,
    s_of_sigma,
    saddle_profile,
    scaling_q,
    sigma_of_s,
)


def test_amplitude_constants():
    assert rho_amp(0) == pytest.approx(16 / 27, abs=1e-12)
    assert math.sqrt(rho_amp(0)) == pytest.approx(4 / (3 * math.sqrt(3)), abs=1e-12)
    assert c_amp(0.5) == pytest.approx(2 * math.sqrt(2) / 3, abs=1e-12)
    assert c_amp(0) == pytest.approx(4 / (3 * math.sqrt(3)), abs=1e-12)
    assert rho_amp(0.5) ** 2 / rho_amp(0) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("z", [0.05, 0.3, 0.5, 0.7, 0.95, -0.4])
def test_amplitude_routes_agree(z):
    assert rho_amp(z) == pytest.approx(rho_appendix(z), abs=1e-12)
    assert c_amp(z) == pytest.approx(c_appendix(z), abs=1e-12)
    # the unreduced form carries the sign of z
    assert abs(c_amp_direct(z)) == pytest.approx(c_amp(z), abs=1e-12)


def test_pole_at_one():
    with pytest.raises(ZeroDivisionError):
        rho_amp(1.0)


def _rel_error(r, z):
    exact = float(h_ice(r + 1).h(Fraction(z)))
    return abs(h_asymptotic(r, z) / exact - 1)


@pytest.mark.parametrize("z", [0.0, 0.3, 0.7, -0.4])
def test_large_r_error_halves(z):
    e40, e80 = _rel_error(40, z), _rel_error(80, z)
    assert e40 <= 0.2 / 40 and e80 <= 0.2 / 80
    assert 0.35 <= e80 / e40 <= 0.65


def test_z0_against_pochhammer():
    r = 60
    exact = Fraction(pochhammer(r + 1, r), pochhammer(2 * r + 2, r))
    assert h_asymptotic(r, 0.0) / float(exact) == pytest.approx(1.0, abs=2 / r)


def test_central_binomial_prefactor():
    exact, approx = central_binomial_prefactor(50)
    assert exact / approx == pytest.approx(1.0, abs=1 / 50)


# ---------------------------------------------------------------------------
# saddle points and the phase


def test_saddle_regimes():
    crit = saddle_profile(Y_C)
    assert crit.regime == "critical" and crit.w_plus == crit.w_minus == 0.5
    low = saddle_profile(0.05)
    assert low.regime == "real-saddles"
    assert 0 < low.w_minus.real < low.w_plus.real < 1 and low.w_plus.imag == 0
    high = saddle_profile(0.4)
    assert high.regime == "complex-saddles"
    assert high.w_minus == pytest.approx(high.w_plus.conjugate())
    with pytest.raises(ValueError):
        saddle_profile(0.7)


@pytest.mark.parametrize("y", [0.05, 0.1, 0.2, 0.3, 0.45])
def test_saddles_are_stationary(y):
    p = saddle_profile(y)
    for w in (p.w_plus, p.w_minus):
        assert abs(p.g_prime(w)) < 1e-12
        # derivative formula matches a numerical derivative of g
        h = 1e-6
        w0 = w + 0.05j if abs(w.imag) < 1e-14 else w
        num = (g_phase(w0 + h, y) - g_phase(w0 - h, y)) / (2 * h)
        assert num == pytest.approx(g_prime(w0, y), abs=1e-7)


def test_phase_taylor_cubic():
    eta = 0.01
    y = Y_C - eta
    lam = np.linspace(-0.02, 0.02, 41)
    lam = lam[lam != 0]
    vals = np.array([g_phase(0.5 + l, y).real for l in lam])
    assert abs(g_phase(0.5, y)) < 1e-15
    # highest power first; the eta-derivative of the cubic coefficient is -16/3
    c5, c4, c3, c2, c1, c0 = np.polyfit(lam, vals, 5)
    assert c1 == pytest.approx(4 * eta, abs=1e-9)
    assert c3 - 16 / 3 * eta == pytest.approx(-4 / (3 * math.sqrt(3)), abs=1e-6)
    assert abs(c0) < 1e-12 and abs(c2) < 1e-9 and abs(c4) < 1e-6


def test_scaled_phase_residual():
    sigma, lt = 1.0, 0.7

    def residual(N):
        q = scaling_q(N)
        y = Y_C - sigma / (SCALE * N ** (2 / 3))
        return abs(N * g_phase(0.5 + lt / q, y) - (sigma * lt - lt**3 / 3))

    r3, r4 = residual(1e3), residual(1e4)
    assert r3 < 1e3 ** (-1 / 3) and r4 < 1e4 ** (-1 / 3)
    # g is odd about 1/2, so the first correction is O(N^{-2/3})
    assert r3 / r4 == pytest.approx(10 ** (2 / 3), rel=0.05)


# ---------------------------------------------------------------------------
# arctic curve and scaling bookkeeping


def test_arctic_endpoints():
    assert arctic_curve(0.0) == pytest.approx(0.5, abs=1e-15)
    assert arctic_curve(0.5) == pytest.approx(0.0, abs=1e-15)


def test_arctic_fixed_point():
    fixed = Y_C
    assert arctic_curve(fixed) == pytest.approx(fixed, abs=1e-12)
    assert fixed == pytest.approx(1 - math.sqrt(3) / 2, abs=1e-15)
    assert 4 * fixed**2 - 8 * fixed + 1 == pytest.approx(0, abs=1e-12)


def test_arctic_samples_on_curve():
    for x, y in arctic_samples(21):
        assert 4 * x * (1 - x) + 4 * y * (1 - y) + 4 * x * y == pytest.approx(1, abs=1e-12)
        assert 0 <= y <= 0.5
    with pytest.raises(ValueError):
        arctic_samples(1)


@pytest.mark.parametrize("N", [48, 96, 192, 1000])
@pytest.mark.parametrize("sigma", [-2.0, 0.0, 1.5])
def test_sigma_bookkeeping(N, sigma):
    eta = sigma / (SCALE * N ** (2 / 3))
    assert s_continuous(N, sigma) / N == pytest.approx(Y_C - eta, abs=1e-14)
    assert sigma_of_s(N, s_continuous(N, sigma)) == pytest.approx(sigma, abs=1e-10)
    assert abs(s_of_sigma(N, sigma) - s_continuous(N, sigma)) <= 0.5
    assert SCALE == pytest.approx(4 / scaling_q(1.0))
