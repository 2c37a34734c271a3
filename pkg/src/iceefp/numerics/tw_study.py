"""Finite-N EFP near the arctic point compared with the GUE Tracy-Widom law."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath

from ..conjecture import efp_conjecture, efp_conjecture_mp
from .asymptotics import s_continuous, s_of_sigma, sigma_of_s
from .fredholm import tw2

EXACT_PATH_MAX_N = 64


@dataclass(frozen=True)
class TWQuery:
    N: int
    sigma: float

    @property
    def s(self) -> int:
        return s_of_sigma(self.N, self.sigma)

    @property
    def sigma_effective(self) -> float:
        """sigma reproduced by the integer s actually used."""
        return sigma_of_s(self.N, self.s)


@lru_cache(maxsize=None)
def efp_float(N: int, s: int, dps: int = 60) -> float:
    """F_N^{(N-s,s)} as a float: exact rationals for N <= 64, mpmath elimination above."""
    if s < 1:
        return 1.0
    if N <= EXACT_PATH_MAX_N:
        with mpmath.workdps(dps):
            x = efp_conjecture(N, s)
            return float(mpmath.mpf(x.numerator) / x.denominator)
    return float(efp_conjecture_mp(N, s, dps))


def interpolated_error(N: int, sigma: float, points: int = 4, grid: int = 60) -> float:
    """F_N - F2 at sigma treating s as continuous.

    The signed error e(s) = F_N(s) - F2(sigma(s)) is known at integer s; it
    is Lagrange-interpolated in sigma through the ``points`` nearest values.
    """
    sc = s_continuous(N, sigma)
    lo = int(sc) - points // 2 + 1
    ss = [s for s in range(lo, lo + points) if 1 <= s < N]
    xs = [sigma_of_s(N, s) for s in ss]
    es = [efp_float(N, s) - tw2(x, grid) for x, s in zip(xs, ss)]
    acc = 0.0
    for i, (xi, ei) in enumerate(zip(xs, es)):
        li = 1.0
        for j, xj in enumerate(xs):
            if j != i:
                li *= (sigma - xj) / (xi - xj)
        acc += ei * li
    return acc


@dataclass(frozen=True)
class StudyRow:
    N: int
    sigma: float
    s: int
    sigma_eff: float
    F: float
    F2: float
    error: float
    error_eff: float
    error_interp: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def tw_convergence_study(Ns, sigmas, grid: int = 60) -> list[StudyRow]:
    """One row per (N, sigma): integer s, F_N, F2(sigma) and three error measures.

    ``error`` compares with F2 at the nominal sigma; ``error_eff`` uses the
    sigma reproduced by the rounded s; ``error_interp`` treats s as continuous.
    """
    rows = []
    for sigma in sigmas:
        F2 = tw2(sigma, grid)
        for N in Ns:
            q = TWQuery(N, sigma)
            if q.s < 1:
                raise ValueError(f"sigma={sigma} gives s < 1 at N={N}")
            F = efp_float(N, q.s)
            se = q.sigma_effective
            rows.append(
                StudyRow(N, sigma, q.s, se, F, F2, abs(F - F2), abs(F - tw2(se, grid)),
                         abs(interpolated_error(N, sigma, grid=grid)))
            )
    return rows


def doubling_ratios(rows: list[StudyRow], attr: str = "error") -> dict[float, list[float]]:
    """Per sigma, successive ratios of the chosen error across increasing N."""
    out: dict[float, list[float]] = {}
    for sigma in sorted({r.sigma for r in rows}):
        errs = [getattr(r, attr) for r in sorted((r for r in rows if r.sigma == sigma), key=lambda r: r.N)]
        out[sigma] = [b / a if a else float("inf") for a, b in zip(errs, errs[1:])]
    return out
