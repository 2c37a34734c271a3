"""Finite-determinant formula for the EFP at the ice point with r = N - s.

The s x s matrix A = D L U has a diagonal part built from h_{r+i}(0) and unit
triangular factors whose entries are combinations of generalized Laguerre
operators L_n^{(alpha)}(d/dz) applied to h_{r+i} at z = 0.  A second
factorisation V = Lt Dt Ut uses h_{N-i+1} and is related to the first by
conjugation with the unit anti-diagonal matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import mpmath

from .boundary import BoundaryFn, h_ice
from .exact import Matrix, Poly, det_exact, det_float, series_residue, LaurentSeries
from .report import CheckReport


def gen_binom(a: int, b: int) -> int:
    """Binomial coefficient for integer a of any sign; zero for b < 0."""
    if b < 0:
        return 0
    num = 1
    for k in range(b):
        num *= a - k
    return num // factorial(b)


def laguerre_poly(n: int, alpha: int) -> Poly:
    """L_n^{(alpha)}(x) = sum_k C(n+alpha, n-k) (-x)^k / k!; zero for n < 0."""
    if n < 0:
        return Poly([], "x")
    return Poly([Fraction(gen_binom(n + alpha, n - k) * (-1) ** k, factorial(k)) for k in range(n + 1)], "x")


def laguerre_apply(n: int, alpha: int, f) -> Fraction:
    """L_n^{(alpha)}(d/dz) f(z) at z = 0 for a polynomial (or BoundaryFn) f.

    Since f^{(k)}(0)/k! is the k-th Taylor coefficient, this reduces to
    sum_k C(n+alpha, n-k) (-1)^k [z^k] f.
    """
    p = f.h if isinstance(f, BoundaryFn) else f
    if n < 0:
        return Fraction(0)
    return sum(
        (Fraction(gen_binom(n + alpha, n - k) * (-1) ** k) * p[k] for k in range(n + 1)),
        Fraction(0),
    )


def laguerre_residue(n: int, alpha: int, f) -> Fraction:
    """Residue at 0 of (1-z)^{n+alpha} z^{-n-1} f(z), by Laurent expansion."""
    p = f.h if isinstance(f, BoundaryFn) else f
    kern = _one_minus_z_pow(n + alpha, n + 1)
    series = LaurentSeries(-n - 1, kern, 0) * LaurentSeries.from_poly(p, n + 1)
    return Fraction(series_residue(series))


def _one_minus_z_pow(e: int, n: int) -> list:
    """First n Taylor coefficients of (1-z)^e for any integer e."""
    return [gen_binom(e, k) * (-1) ** k for k in range(n)]


def _bracket(n: int, sign: int, h: Poly) -> Fraction:
    """[L_n^{(-1)} + sign * L_{n-1}^{(0)}](d/dz) h at 0."""
    return laguerre_apply(n, -1, h) + sign * laguerre_apply(n - 1, 0, h)


@dataclass(frozen=True)
class ConjectureMatrices:
    N: int
    s: int
    D: Matrix
    L: Matrix
    U: Matrix
    Lt: Matrix
    Dt: Matrix
    Ut: Matrix
    Omega: Matrix

    @property
    def r(self) -> int:
        return self.N - self.s

    @property
    def A(self) -> Matrix:
        return self.D @ self.L @ self.U

    @property
    def V(self) -> Matrix:
        return self.Lt @ self.Dt @ self.Ut


def _check_ns(N: int, s: int):
    if not 1 <= s < N:
        raise ValueError(f"need 1 <= s < N, got N={N}, s={s}")


def _entry_l(h: Poly, i: int, j: int, sign_exp: int):
    n = i - j
    if n < 0:
        return Fraction(0)
    return Fraction((-1) ** n) / h[0] * _bracket(n, (-1) ** sign_exp, h)


def build_matrices(N: int, s: int) -> ConjectureMatrices:
    """All factor matrices of both factorisations, exact."""
    _check_ns(N, s)
    r = N - s
    hr = {i: h_ice(r + i).h for i in range(1, s + 1)}
    ht = {i: h_ice(N - i + 1).h for i in range(1, s + 1)}
    D = Matrix.diag([hr[i][0] for i in range(1, s + 1)])
    L = Matrix.build(s, s, lambda i, j: _entry_l(hr[i], i, j, i - 1))
    U = Matrix.build(s, s, lambda i, j: _entry_l(hr[j], j, i, j))
    # the lower factor takes h indexed by the column, the upper one by the row
    Lt = Matrix.build(s, s, lambda i, j: _entry_l(ht[j], i, j, j))
    Dt = Matrix.diag([ht[i][0] for i in range(1, s + 1)])
    Ut = Matrix.build(s, s, lambda i, j: _entry_l(ht[i], j, i, i - 1))
    return ConjectureMatrices(N, s, D, L, U, Lt, Dt, Ut, Matrix.antidiag(s))


def a_matrix(N: int, s: int) -> Matrix:
    return build_matrices(N, s).A


def efp_conjecture(N: int, s: int) -> Fraction:
    """det(I - DLU), exact."""
    A = a_matrix(N, s)
    return det_exact(Matrix.identity(s) - A)


# ---------------------------------------------------------------------------
# high-precision float path


def _h_taylor_mp(n: int, kmax: int) -> list:
    """First kmax+1 Taylor coefficients of h_n at the ice point as mpf.

    Uses the hypergeometric term ratio directly, avoiding the full exact polynomial.
    """
    a, b, c = -n + 1, n, -2 * n + 2
    pref = mpmath.mpf(1)
    for k in range(n - 1):
        pref *= mpmath.mpf(n + k) / (2 * n + k)
    out, term = [], pref
    for k in range(min(kmax, n - 1) + 1):
        out.append(term)
        if k < n - 1:
            term = term * (a + k) * (b + k) / ((c + k) * (k + 1))
    return out + [mpmath.mpf(0)] * (kmax + 1 - len(out))


def _bracket_mp(n: int, sign: int, coeffs: list):
    acc = mpmath.mpf(0)
    for k in range(n + 1):
        acc += gen_binom(n - 1, n - k) * (-1) ** k * coeffs[k]
    for k in range(n):
        acc += sign * gen_binom(n - 1, n - 1 - k) * (-1) ** k * coeffs[k]
    return acc


def a_matrix_mp(N: int, s: int, dps: int = 50) -> list[list]:
    """A = DLU with entries as mpmath floats at the given precision."""
    _check_ns(N, s)
    r = N - s
    with mpmath.workdps(dps):
        co = {i: _h_taylor_mp(r + i, s) for i in range(1, s + 1)}
        Lm = [[mpmath.mpf(0)] * s for _ in range(s)]
        Um = [[mpmath.mpf(0)] * s for _ in range(s)]
        for i in range(1, s + 1):
            for j in range(1, i + 1):
                n = i - j
                Lm[i - 1][j - 1] = (-1) ** n * _bracket_mp(n, (-1) ** (i - 1), co[i]) / co[i][0]
                Um[j - 1][i - 1] = (-1) ** n * _bracket_mp(n, (-1) ** i, co[i]) / co[i][0]
        A = [[mpmath.mpf(0)] * s for _ in range(s)]
        for i in range(s):
            di = co[i + 1][0]
            for j in range(s):
                acc = mpmath.mpf(0)
                for l in range(min(i, j) + 1):
                    acc += Lm[i][l] * Um[l][j]
                A[i][j] = di * acc
    return A


def efp_conjecture_mp(N: int, s: int, dps: int = 50):
    """det(I - DLU) by pivoted elimination in mpmath at dps digits."""
    with mpmath.workdps(dps):
        A = a_matrix_mp(N, s, dps)
        M = [[(1 if i == j else 0) - A[i][j] for j in range(s)] for i in range(s)]
        return +det_float(M, one=mpmath.mpf(1))


# ---------------------------------------------------------------------------
# structure checks


def verify_omega_relations(N: int, s: int) -> CheckReport:
    """Anti-diagonal conjugation relations between the two factorisations."""
    m = build_matrices(N, s)
    O = m.Omega
    rep = CheckReport(f"Omega relations N={N} s={s}")
    rep.add("Omega^2 = I", O @ O, Matrix.identity(s))
    rep.add("Dt = Omega D Omega", m.Dt, O @ m.D @ O)
    if s % 2 == 0:
        rep.add("Lt = Omega L^T Omega", m.Lt, O @ m.L.T @ O)
        rep.add("Ut = Omega U^T Omega", m.Ut, O @ m.U.T @ O)
    else:
        rep.add("Lt = Omega U Omega", m.Lt, O @ m.U @ O)
        rep.add("Ut = Omega L Omega", m.Ut, O @ m.L @ O)
    eye = Matrix.identity(s)
    rep.add("det(I-A) = det(I-V)", det_exact(eye - m.A), det_exact(eye - m.V))
    return rep


def _e_laurent(i: int, h: Poly, upper: bool) -> list:
    """Coefficients of e_i at exponents -i..-1 (index k <-> z^{k-i})."""
    z = Poly([0, 1], "z")
    sign = (-1) ** (i + 1) if upper else (-1) ** i
    num = (1 - z) ** (i - 1) * (1 + sign * z) * h
    cs = num.padded(i)
    if upper:
        cs = [c / h[0] for c in cs]
    return cs


def a_entries_integral(N: int, s: int) -> Matrix:
    """A_ij as the double residue of e_i^L(z) e_j^U(w) / (1 - z - w)."""
    _check_ns(N, s)
    r = N - s
    hs = {i: h_ice(r + i).h for i in range(1, s + 1)}
    eL = {i: _e_laurent(i, hs[i], False) for i in hs}
    eU = {i: _e_laurent(i, hs[i], True) for i in hs}

    def entry(i: int, j: int):
        # [z^-1 w^-1] of e^L e^U sum_n (z+w)^n: pair z^{-1-a} w^{-1-b} with C(a+b, a)
        acc = Fraction(0)
        for a in range(i):
            for b in range(j):
                acc += eL[i][i - 1 - a] * eU[j][j - 1 - b] * comb(a + b, a)
        return acc

    return Matrix.build(s, s, entry)


def a_entries_finite_sum(N: int, s: int) -> Matrix:
    """A_ij from the finite l-sum of products of single contour integrals."""
    _check_ns(N, s)
    r = N - s
    hs = {i: h_ice(r + i).h for i in range(1, s + 1)}

    def single(n: int, sign: int, h: Poly) -> Fraction:
        # residue of (1-z)^{n-1} z^{-n-1} (1 + sign z) h(z)
        kern = _one_minus_z_pow(n - 1, n + 1)
        cs = (Poly(kern, "z") * Poly([1, sign], "z") * h).padded(n + 1)
        return Fraction(cs[n])

    def entry(i: int, j: int):
        acc = Fraction(0)
        for l in range(1, min(i, j) + 1):
            acc += single(i - l, (-1) ** i, hs[i]) * single(j - l, (-1) ** (j + 1), hs[j]) / hs[j][0]
        return acc

    return Matrix.build(s, s, entry)
