"""Airy function Ai and its derivative, evaluated in-repo.

Small arguments use the Maclaurin series summed in extended precision (the
series cancels heavily for positive t); large |t| uses the classical
asymptotic expansions truncated at their smallest term.  An independent
contour-integral evaluation is provided for cross-checks.
"""

from __future__ import annotations

import math

import mpmath
import numpy as np

SERIES_CUTOFF = 8.0
_SERIES_DPS = 45


def _series(t: float) -> tuple[float, float]:
    with mpmath.workdps(_SERIES_DPS):
        x = mpmath.mpf(t)
        c1 = 1 / (mpmath.power(3, mpmath.mpf(2) / 3) * mpmath.gamma(mpmath.mpf(2) / 3))
        c2 = 1 / (mpmath.power(3, mpmath.mpf(1) / 3) * mpmath.gamma(mpmath.mpf(1) / 3))
        x3 = x**3
        # f = sum 3^k (1/3)_k x^{3k}/(3k)!, g = sum 3^k (2/3)_k x^{3k+1}/(3k+1)!
        f = fp = g = gp = mpmath.mpf(0)
        tf, tg = mpmath.mpf(1), x
        k = 0
        eps = mpmath.mpf(10) ** (-_SERIES_DPS + 5)
        while True:
            f += tf
            g += tg
            if k > 0:
                fp += tf * 3 * k / x if x != 0 else 0
            gp += tg * (3 * k + 1) / x if x != 0 else (1 if k == 0 else 0)
            tf = tf * x3 / ((3 * k + 2) * (3 * k + 3))
            tg = tg * x3 / ((3 * k + 3) * (3 * k + 4))
            k += 1
            if abs(tf) + abs(tg) < eps * (abs(f) + abs(g) + 1) and k > 3:
                break
        ai = c1 * f - c2 * g
        aip = c1 * fp - c2 * gp
        return float(ai), float(aip)


def _uk(kmax: int) -> list[float]:
    u = [1.0]
    for k in range(1, kmax + 1):
        u.append(u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k))
    return u


_U = _uk(60)
_V = [1.0] + [-(6 * k + 1) / (6 * k - 1) * _U[k] for k in range(1, 61)]


def _truncated(coeffs: list[float], zeta: float, alternating: bool = True) -> float:
    """sum_k (-1)^k c_k / zeta^k stopped at the smallest term."""
    acc, prev = 0.0, math.inf
    for k, c in enumerate(coeffs):
        term = c / zeta**k
        if abs(term) > prev:
            break
        acc += (-1) ** k * term if alternating else term
        prev = abs(term)
    return acc


def _asymptotic(t: float) -> tuple[float, float]:
    if t > 0:
        zeta = 2.0 / 3.0 * t**1.5
        pre = math.exp(-zeta) / (2 * math.sqrt(math.pi))
        ai = pre / t**0.25 * _truncated(_U, zeta)
        aip = -pre * t**0.25 * _truncated(_V, zeta)
        return ai, aip
    x = -t
    zeta = 2.0 / 3.0 * x**1.5
    c, s = math.cos(zeta - math.pi / 4), math.sin(zeta - math.pi / 4)
    even_u = _truncated([_U[2 * k] for k in range(30)], zeta**2)
    odd_u = _truncated([_U[2 * k + 1] for k in range(30)], zeta**2) / zeta
    even_v = _truncated([_V[2 * k] for k in range(30)], zeta**2)
    odd_v = _truncated([_V[2 * k + 1] for k in range(30)], zeta**2) / zeta
    ai = (c * even_u + s * odd_u) / (math.sqrt(math.pi) * x**0.25)
    aip = x**0.25 * (s * even_v - c * odd_v) / math.sqrt(math.pi)
    return ai, aip


def airy_pair(t: float) -> tuple[float, float]:
    """(Ai(t), Ai'(t)) for a real scalar."""
    t = float(t)
    if t > 105.0:
        return 0.0, -0.0  # below the smallest subnormal
    if abs(t) <= SERIES_CUTOFF:
        return _series(t)
    return _asymptotic(t)


def airy(t, derivative: bool = False):
    """Ai(t) (or Ai'(t)) for a scalar or array argument."""
    idx = 1 if derivative else 0
    if np.ndim(t) == 0:
        return airy_pair(t)[idx]
    arr = np.asarray(t, dtype=float)
    return np.array([airy_pair(x)[idx] for x in arr.ravel()]).reshape(arr.shape)


def airy_series(t: float) -> tuple[float, float]:
    """Maclaurin-series route regardless of cutoff (for regime checks)."""
    return _series(t)


def airy_asymptotic(t: float) -> tuple[float, float]:
    """Asymptotic route regardless of cutoff (for regime checks); t != 0."""
    return _asymptotic(float(t))


def airy_contour(t: float, n: int = 200, R: float = 9.0) -> float:
    """Ai(t) from the integral over the two rays at angles +-2pi/3.

    With w = exp(2 i pi/3), Ai(t) = Im(int_0^inf exp(t rho w - rho^3/3) w drho) / pi.
    The ray integral is done by Gauss-Legendre on [0, R].
    """
    x, wts = np.polynomial.legendre.leggauss(n)
    rho = 0.5 * R * (x + 1)
    wts = 0.5 * R * wts
    om = np.exp(2j * np.pi / 3)
    vals = np.exp(t * rho * om - rho**3 / 3) * om
    return float(np.imag(np.sum(wts * vals)) / np.pi)
