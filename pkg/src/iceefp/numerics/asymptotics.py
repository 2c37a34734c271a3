"""Large-size asymptotics of h_N, saddle points of the phase g(w) and the arctic arc."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

Y_C = 1 - math.sqrt(3) / 2
SCALE = 2 ** (4 / 3) * 3 ** (1 / 6)  # sigma = SCALE * N^{2/3} * eta


def _check_z(z: float):
    if z == 1:
        raise ZeroDivisionError("rho(z) and C(z) have a pole at z = 1")


def rho_amp(z: float) -> float:
    """4[(1-2z)(2-z)(1+z) + 2(1-z+z^2)^{3/2}] / (27(1-z)^2)."""
    _check_z(z)
    P = (1 - 2 * z) * (2 - z) * (1 + z)
    return 4 * (P + 2 * (1 - z + z * z) ** 1.5) / (27 * (1 - z) ** 2)


def c_amp(z: float) -> float:
    """Amplitude C(z) of the large-r form of h_{r+1}(z).

    The closed form 2z / sqrt(2u^4 - P u) with u = sqrt(1-z+z^2) is 0/0 at
    z = 0.  Since 4u^6 - P^2 = 27 z^2 (1-z)^2, it equals sqrt(rho(z)/u).
    """
    _check_z(z)
    u = math.sqrt(1 - z + z * z)
    return math.sqrt(rho_amp(z) / u)


def c_amp_direct(z: float) -> float:
    """C(z) from the unreduced closed form (needs z != 0)."""
    u = math.sqrt(1 - z + z * z)
    P = (2 - z) * (1 - 2 * z) * (1 + z)
    return 2 * z / math.sqrt(2 * u**4 - P * u)


def saddle_t0(z: float) -> float:
    _check_z(z)
    return (2 - z - math.sqrt(1 - z + z * z)) / (3 * (1 - z))


def rho_appendix(z: float) -> float:
    """4 t0 (1-t0)(1-(1-z) t0) at the saddle point t0 of log(t(1-t)(1-(1-z)t))."""
    t0 = saddle_t0(z)
    return 4 * t0 * (1 - t0) * (1 - (1 - z) * t0)


def c_appendix(z: float) -> float:
    """sqrt(8/|f''(t0)|) with f'' computed from f(t) = log(t(1-t)(1-(1-z)t))."""
    t0 = saddle_t0(z)
    f2 = -1 / t0**2 - 1 / (1 - t0) ** 2 - (1 - z) ** 2 / (1 - (1 - z) * t0) ** 2
    return math.sqrt(8 / abs(f2))


def h_asymptotic(r: int, z: float) -> float:
    """Leading large-r form rho(z)^r C(z) of h_{r+1}(z)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return rho_amp(z) ** r * c_amp(z)


def central_binomial_prefactor(r: int) -> tuple[float, float]:
    """(Gamma(2r+2)/Gamma(r+1)^2, 4^r sqrt(4r/pi)) in log-safe floats."""
    exact = math.exp(math.lgamma(2 * r + 2) - 2 * math.lgamma(r + 1))
    approx = 4.0**r * math.sqrt(4 * r / math.pi)
    return exact, approx


# ---------------------------------------------------------------------------
# phase function and saddle points


def g_phase(w: complex, y: float) -> complex:
    """y log((1-w)/w) + log[((1-2w)(2-w)(1+w) + 2(1-w+w^2)^{3/2}) / (3 sqrt3 (1-w)^2)]."""
    root = cmath.sqrt(1 - w + w * w)
    num = (1 - 2 * w) * (2 - w) * (1 + w) + 2 * root**3
    return y * cmath.log((1 - w) / w) + cmath.log(num / (3 * math.sqrt(3) * (1 - w) ** 2))


def g_prime(w: complex, y: float) -> complex:
    return (y - 1 + cmath.sqrt(1 - w + w * w)) / (w * (w - 1))


@dataclass(frozen=True)
class AsymptoticProfile:
    y: float
    w_plus: complex
    w_minus: complex
    regime: str
    y_c: float = Y_C

    def g(self, w: complex) -> complex:
        return g_phase(w, self.y)

    def g_prime(self, w: complex) -> complex:
        return g_prime(w, self.y)


def saddle_profile(y: float, tol: float = 1e-12) -> AsymptoticProfile:
    """Saddle points w_pm = (1 +- sqrt(1-8y+4y^2))/2 and the regime they define."""
    if not 0 < y <= 0.5:
        raise ValueError("y must lie in (0, 1/2]")
    disc = 1 - 8 * y + 4 * y * y
    root = cmath.sqrt(disc)
    wp, wm = (1 + root) / 2, (1 - root) / 2
    if abs(y - Y_C) < tol:
        regime, wp, wm = "critical", 0.5 + 0j, 0.5 + 0j
    elif y < Y_C:
        regime = "real-saddles"
    else:
        regime = "complex-saddles"
    return AsymptoticProfile(y, wp, wm, regime)


def arctic_curve(x: float) -> float:
    """The y in [0, 1/2] with 4x(1-x) + 4y(1-y) + 4xy = 1."""
    if not 0 <= x <= 0.5:
        raise ValueError("x must lie in [0, 1/2]")
    # 4y^2 - 4(1+x)y + (1 - 4x + 4x^2) = 0, smaller root
    disc = max(3 * x * (2 - x), 0.0)
    return ((1 + x) - math.sqrt(disc)) / 2


def arctic_samples(k: int) -> list[tuple[float, float]]:
    if k < 2:
        raise ValueError("need at least two samples")
    return [(0.5 * i / (k - 1), arctic_curve(0.5 * i / (k - 1))) for i in range(k)]


# ---------------------------------------------------------------------------
# Tracy-Widom scaling


def scaling_q(N: float) -> float:
    return 2 ** (2 / 3) / 3 ** (1 / 6) * N ** (1 / 3)


def s_continuous(N: int, sigma: float) -> float:
    """N(1 - sqrt3/2) - N^{1/3} sigma / (2^{4/3} 3^{1/6})."""
    return N * Y_C - N ** (1 / 3) * sigma / SCALE


def s_of_sigma(N: int, sigma: float) -> int:
    """Integer s for a TW query, rounding half to even."""
    return round(s_continuous(N, sigma))


def sigma_of_s(N: int, s: float) -> float:
    """Inverse map: eta = y_c - s/N, sigma = 2^{4/3} 3^{1/6} N^{2/3} eta."""
    return SCALE * N ** (2 / 3) * (Y_C - s / N)
