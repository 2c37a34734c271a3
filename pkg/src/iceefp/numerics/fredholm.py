"""Fredholm determinants: the finite-rank E-kernel and the Airy kernel."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..boundary import h_ice
from ..exact import Poly
from .airy import airy_pair
from .quadrature import NystromGrid, fredholm_det, nystrom_matrix


class AccuracyWarning(UserWarning):
    """The quadrature grid is too coarse for the requested tolerance."""


class ContourError(ValueError):
    """The contour radius does not separate the poles correctly."""


# ---------------------------------------------------------------------------
# Airy kernel and F2


def airy_kernel(t1: float, t2: float, tol: float = 1e-7) -> float:
    """(Ai(t1)Ai'(t2) - Ai'(t1)Ai(t2))/(t1 - t2), with Ai'^2 - t Ai^2 on the diagonal.

    Near the diagonal the ratio is replaced by its first-order Taylor
    expansion about the midpoint, using Ai'' = t Ai.
    """
    if abs(t1 - t2) < tol:
        m = 0.5 * (t1 + t2)
        a, ap = airy_pair(m)
        return ap * ap - m * a * a
    a1, p1 = airy_pair(t1)
    a2, p2 = airy_pair(t2)
    return (a1 * p2 - p1 * a2) / (t1 - t2)


def airy_kernel_integral(t1: float, t2: float, n: int = 80, length: float = 14.0) -> float:
    """int_0^inf Ai(t1 + t) Ai(t2 + t) dt by Gauss-Legendre on a truncated range."""
    length = length + max(0.0, -min(t1, t2))
    grid = NystromGrid.half_line(0.0, n, length)
    a1 = np.array([airy_pair(t1 + x)[0] for x in grid.nodes])
    a2 = np.array([airy_pair(t2 + x)[0] for x in grid.nodes])
    return float(np.sum(grid.weights * a1 * a2))


def _airy_matrix(x: np.ndarray) -> np.ndarray:
    pairs = np.array([airy_pair(t) for t in x])
    a, ap = pairs[:, 0], pairs[:, 1]
    d = x[:, None] - x[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        K = (a[:, None] * ap[None, :] - ap[:, None] * a[None, :]) / d
    diag = ap * ap - x * a * a
    K[np.diag_indices_from(K)] = diag
    return K


def tw_grid(sigma: float, n: int) -> NystromGrid:
    # Ai(t)^2 < 1e-30 once t > 11; the kernel is negligible beyond that
    upper = max(sigma, 0.0) + 11.0 if sigma < 11.0 else sigma + 4.0
    return NystromGrid.half_line(sigma, n, upper - sigma)


@dataclass
class TWResult:
    value: float
    n: int
    meta: dict = field(default_factory=dict)


def tw2(sigma: float, n: int = 60, check: bool = False) -> float | TWResult:
    """GUE Tracy-Widom distribution F2(sigma) = det(1 - K_Ai) on [sigma, inf).

    With ``check=True`` the value is recomputed on a grid with 1.5n nodes
    and the difference is reported; a difference above 1e-8 emits an
    :class:`AccuracyWarning`.
    """
    if n < 20:
        raise ValueError("grid needs at least 20 nodes")
    grid = tw_grid(sigma, n)
    x, w = grid.nodes, grid.weights
    sw = np.sqrt(w)
    M = sw[:, None] * _airy_matrix(x) * sw[None, :]
    val = float(np.linalg.det(np.eye(n) - M))
    if not check:
        return val
    fine = tw2(sigma, int(1.5 * n))
    diff = abs(fine - val)
    if diff > 1e-8:
        warnings.warn(f"tw2({sigma}) grid n={n} differs by {diff:.2e} from refined grid", AccuracyWarning)
    return TWResult(val, n, {"refined_difference": diff, "upper": float(grid.a + grid.length)})


def airy_nystrom_eigs(sigma: float, n: int = 60) -> np.ndarray:
    """Eigenvalues of the symmetrised Nystrom discretisation of K_Ai on [sigma, inf)."""
    grid = tw_grid(sigma, n)
    sw = np.sqrt(grid.weights)
    M = sw[:, None] * _airy_matrix(grid.nodes) * sw[None, :]
    return np.linalg.eigvalsh(0.5 * (M + M.T))


# ---------------------------------------------------------------------------
# E-kernel


def _e_coeffs(N: int, s: int, j: int, upper: bool) -> list[Fraction]:
    """Laurent coefficients of e_j at z^{-j}..z^{-1} (index k <-> z^{k-j})."""
    r = N - s
    h = h_ice(r + j).h
    z = Poly([0, 1], "z")
    sign = (-1) ** (j + 1) if upper else (-1) ** j
    cs = ((1 - z) ** (j - 1) * (1 + sign * z) * h).padded(j)
    if upper:
        cs = [c / h[0] for c in cs]
    return cs


@lru_cache(maxsize=None)
def e_polynomials(N: int, s: int) -> tuple[np.ndarray, np.ndarray]:
    """Coefficient arrays (s x s, ascending powers of t) of E_j^L and E_j^U.

    E_j(t) = residue of e^{wt} e_j(w) at 0 = sum_k [w^{-k}] e_j * t^{k-1}/(k-1)!.
    """
    if not 1 <= s < N:
        raise ValueError("need 1 <= s < N")
    EL = np.zeros((s, s))
    EU = np.zeros((s, s))
    for j in range(1, s + 1):
        cl, cu = _e_coeffs(N, s, j, False), _e_coeffs(N, s, j, True)
        for k in range(1, j + 1):
            # coefficient of w^{-k} sits at index j - k
            EL[j - 1, k - 1] = float(cl[j - k] / math.factorial(k - 1))
            EU[j - 1, k - 1] = float(cu[j - k] / math.factorial(k - 1))
    return EL, EU


def _polyval_rows(C: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Evaluate each row of C (ascending coefficients) at t; result shape (rows, *t.shape)."""
    out = np.zeros((C.shape[0],) + np.shape(t))
    for k in range(C.shape[1] - 1, -1, -1):
        out = out * t + C[:, k].reshape((-1,) + (1,) * np.ndim(t))
    return out


def kernel_E_poly(N: int, s: int, t1, t2):
    """e^{-(t1+t2)/2} sum_j E_j^L(t1) E_j^U(t2), vectorised over t1, t2."""
    EL, EU = e_polynomials(N, s)
    t1, t2 = np.broadcast_arrays(np.asarray(t1, float), np.asarray(t2, float))
    vl = _polyval_rows(EL, t1)
    vu = _polyval_rows(EU, t2)
    return np.exp(-(t1 + t2) / 2) * np.sum(vl * vu, axis=0)


def kernel_E(N: int, s: int, t1: float, t2: float, radius: float = 0.4, m: int = 256) -> float:
    """Double contour integral of e^{(z-1/2)t1 + (w-1/2)t2} sum_j e_j^L(z) e_j^U(w).

    Both circles |z| = |w| = radius are discretised by the m-point trapezoidal
    rule, which is spectrally accurate for the analytic-times-Laurent integrand.
    """
    if not 0 < radius < 0.5:
        raise ContourError("radius must lie in (0, 1/2) so that Re(z + w) < 1 on the contours")
    r = N - s
    theta = 2 * np.pi * np.arange(m) / m
    z = radius * np.exp(1j * theta)
    total = 0.0
    for j in range(1, s + 1):
        h = h_ice(r + j).h
        hz = np.polyval([float(c) for c in reversed(h.coeffs)], z)
        h0 = float(h[0])
        eL = (1 - z) ** (j - 1) / z**j * (1 + (-1) ** j * z) * hz
        eU = (1 - z) ** (j - 1) / (h0 * z**j) * (1 + (-1) ** (j + 1) * z) * hz
        # dz/(2 pi i) = z dtheta/(2 pi): the trapezoid rule is the mean of f(z) z
        IL = np.mean(np.exp(z * t1) * eL * z)
        IU = np.mean(np.exp(z * t2) * eU * z)
        total += IL * IU
    return float(np.real(total) * math.exp(-(t1 + t2) / 2))


def e_grid(N: int, s: int, n: int) -> NystromGrid:
    # kernel ~ t^{2s} e^{-t}: cut where that falls below 1e-17
    T = 40.0
    while (2 * s) * math.log(T) - T > -40:
        T += 5.0
    return NystromGrid.half_line(0.0, n, T)


def fredholm_det_E(N: int, s: int, n: int = 60) -> float:
    """det(1 - K^E) on [0, inf) by the Nystrom method."""
    grid = e_grid(N, s, n)
    return fredholm_det(lambda a, b: kernel_E_poly(N, s, a, b), grid)


def e_nystrom_matrix(N: int, s: int, n: int = 60) -> np.ndarray:
    grid = e_grid(N, s, n)
    return nystrom_matrix(lambda a, b: kernel_E_poly(N, s, a, b), grid)
