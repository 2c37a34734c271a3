"""Boundary one-point function h_N(z) of the six-vertex model with DWBC.

Two constructions are provided: the determinant ratio built from the
sequence phi_j(t) (valid for any weights) and the terminating
hypergeometric series available at the ice point.  Both return exact
polynomials in z whose coefficient of z^(r-1) is the refined probability
H_N^(r).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .exact import Matrix, Poly, det_exact
from .report import CheckReport


class SingularParameters(ArithmeticError):
    """The determinant-ratio formula degenerates at the requested weights."""


@dataclass(frozen=True)
class WeightParams:
    """Weights parametrised by Delta = (a^2+b^2-c^2)/(2ab) and t = b/a."""

    delta: Fraction
    t: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "delta", _q(self.delta))
        object.__setattr__(self, "t", _q(self.t))
        if self.t == 0:
            raise ValueError("t must be nonzero")

    @property
    def is_ice(self) -> bool:
        return self.delta == Fraction(1, 2) and self.t == 1

    @property
    def c_squared(self):
        """c^2/a^2 = 1 + t^2 - 2 Delta t."""
        return 1 + self.t**2 - 2 * self.delta * self.t


def _q(x):
    if isinstance(x, (int, Fraction, str)):
        return Fraction(x)
    return x  # symbolic Delta (RatFunc) passes through


ICE = WeightParams(Fraction(1, 2), Fraction(1))


@dataclass(frozen=True)
class BoundaryFn:
    """h_N(z) as an exact polynomial of degree <= N-1."""

    N: int
    h: Poly

    def __call__(self, z):
        return self.h(z)

    def coeff(self, k: int):
        return self.h[k]

    def deriv0(self, k: int):
        """k-th derivative at z = 0."""
        return factorial(k) * self.h[k]

    def deriv1(self, k: int):
        """k-th derivative at z = 1."""
        return self.h.derivative(k)(1)

    @property
    def coefficients(self) -> list:
        return self.h.padded(self.N)


# ---------------------------------------------------------------------------
# phi_j(t) sequence: Laurent polynomials in t with polynomial-in-Delta coefficients


def phi_sequence(j_max: int) -> list[dict[int, Poly]]:
    """phi_0 .. phi_{j_max} with phi_{j+1} = t d/dt[(t - 2 Delta + 1/t) phi_j].

    Each entry maps an exponent of t to its coefficient, a polynomial in Delta.
    """
    if j_max < 0:
        raise ValueError("j_max must be non-negative")
    one = Poly([1], "Delta")
    two_delta = Poly([0, 2], "Delta")
    seq = [{0: one}]
    for _ in range(j_max):
        prev = seq[-1]
        prod: dict[int, Poly] = {}
        for k, c in prev.items():
            for shift, f in ((1, one), (0, -two_delta), (-1, one)):
                prod[k + shift] = prod.get(k + shift, Poly([], "Delta")) + c * f
        seq.append({k: c * k for k, c in prod.items() if k != 0 and not (c * k).is_zero()})
    return seq


def phi_value(phi: dict[int, Poly], delta, t):
    """phi_j evaluated at a numeric (or symbolic) Delta and numeric t."""
    acc = 0
    for k, c in phi.items():
        acc = acc + c(delta) * _pow(t, k)
    return acc


def _pow(t, k: int):
    return t**k if k >= 0 else Fraction(1) / t ** (-k)


def _phi_in_z(phi: dict[int, Poly], delta, t, shift: int) -> Poly:
    """z^shift * phi_j(t z) as a polynomial in z (shift >= max negative power)."""
    cs = {}
    for k, c in phi.items():
        cs[k + shift] = c(delta) * _pow(t, k)
    if cs and min(cs) < 0:
        raise ValueError("shift too small for Laurent polynomial")
    top = max(cs) if cs else -1
    return Poly([cs.get(i, 0) for i in range(top + 1)], "z")


def h_general(N: int, w: WeightParams) -> BoundaryFn:
    """h_N(z) from the determinant ratio with last column phi_{i-1}(tz)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return _h_general(N, w)


@lru_cache(maxsize=None)
def _h_general(N: int, w: WeightParams) -> BoundaryFn:
    if N == 1:
        return BoundaryFn(1, Poly([Fraction(1)], "z"))
    delta, t = w.delta, w.t
    phis = phi_sequence(2 * N - 2)
    vals = [phi_value(p, delta, t) for p in phis]
    hankel = Matrix.build(N, N, lambda i, j: vals[i + j - 2])
    denom = det_exact(hankel)
    pref = t - 2 * delta + Fraction(1) / t
    if denom == 0 or pref == 0:
        raise SingularParameters(f"degenerate determinant ratio at Delta={delta}, t={t}")
    # expand the numerator determinant along its last column
    numer = Poly([], "z")
    for i in range(1, N + 1):
        minor = Matrix.build(
            N - 1, N - 1, lambda a, b: vals[(a if a < i else a + 1) + b - 2]
        )
        cof = det_exact(minor) * (-1) ** (i + N)
        if cof == 0:
            continue
        numer = numer + _phi_in_z(phis[i - 1], delta, t, N - 1) * cof
    numer = numer * (factorial(N - 1) * pref ** (N - 1))
    quot, rem = numer.divmod(Poly([-1, 1], "z") ** (N - 1))
    if not rem.is_zero():
        raise ArithmeticError("determinant ratio is not a polynomial; phi recursion inconsistent")
    h = quot.map(lambda c: c / denom)
    return BoundaryFn(N, h)


# ---------------------------------------------------------------------------
# ice point


def pochhammer(a, n: int):
    acc = 1
    for k in range(n):
        acc *= a + k
    return acc


def h_ice(N: int) -> BoundaryFn:
    """h_N(z) = (N)_{N-1}/(2N)_{N-1} * 2F1(-N+1, N; -2N+2 | z) at Delta=1/2, t=1."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return _h_ice(N)


@lru_cache(maxsize=None)
def _h_ice(N: int) -> BoundaryFn:
    pref = Fraction(pochhammer(N, N - 1), pochhammer(2 * N, N - 1))
    a, b, c = -N + 1, N, -2 * N + 2
    coeffs = []
    term = Fraction(1)
    for k in range(N):
        coeffs.append(pref * term)
        # ratio of consecutive hypergeometric terms
        term *= Fraction((a + k) * (b + k), (c + k) * (k + 1)) if k < N - 1 else 0
    return BoundaryFn(N, Poly(coeffs, "z"))


def refined_H(N: int, r: int) -> Fraction:
    """H_N^(r) = C(N+r-2, N-1) C(2N-1-r, N-1) / C(3N-2, N-1)."""
    if not 1 <= r <= N:
        raise ValueError(f"r={r} outside 1..{N}")
    return Fraction(comb(N + r - 2, N - 1) * comb(2 * N - 1 - r, N - 1), comb(3 * N - 2, N - 1))


def h_fn(N: int, w: WeightParams = ICE) -> BoundaryFn:
    """h_N for the given weights, taking the closed form at the ice point."""
    return h_ice(N) if w == ICE else h_general(N, w)


def kappa(N: int, k: int) -> Fraction:
    """h_N^{(k)}(0) / h_N(0) at the ice point."""
    h = h_ice(N)
    return h.deriv0(k) / h.coeff(0)


def kappa_closed_form(N: int, k: int) -> Fraction:
    """Closed forms of the first three logarithmic-derivative ratios.

    Valid for N >= max(k, 2); below that h_N has too low a degree and the
    rational expressions no longer describe it.
    """
    if k == 0:
        return Fraction(1)
    if N < max(k, 2):
        raise ValueError(f"closed form for k={k} needs N >= {max(k, 2)}")
    if k == 1:
        return Fraction(N, 2)
    if k == 2:
        return Fraction((N - 2) * N * (N + 1), 2 * (2 * N - 3))
    if k == 3:
        return Fraction((N - 3) * N * (N + 1) * (N + 2), 4 * (2 * N - 3))
    raise ValueError("closed form known only for k <= 3")


def h_tilde(N: int, w: WeightParams = ICE) -> BoundaryFn:
    """z^{N-1} h_N(1/z)."""
    h = h_fn(N, w)
    return BoundaryFn(N, h.h.reverse(N - 1))


# ---------------------------------------------------------------------------
# identities


def verify_sum_rules(N: int, w: WeightParams = ICE) -> CheckReport:
    """Derivatives of h at z = 1 against derivatives at z = 0 (three relations)."""
    if N < 4:
        raise ValueError("sum rules need N >= 4")
    t, d = w.t, w.delta
    hN, hN1, hN2, hN3 = (h_fn(N - i, w) for i in range(4))

    def k(h: BoundaryFn, j: int):
        return h.deriv0(j) / h.coeff(0)

    D = 1 - 2 * d * t + t**2
    rep = CheckReport(f"sum rules N={N} Delta={d} t={t}")
    rep.add("h'_{N-1}(1)", hN1.deriv1(1), (k(hN, 1) - t**2) / D)

    rhs2 = (
        -k(hN, 2)
        + 2 * k(hN1, 1) * k(hN, 1)
        - 2 * (1 - 2 * d * t + 2 * t**2) * k(hN1, 1)
        + 2 * k(hN, 1)
        - 2 * t**2
        + 2 * t**4
    ) / D**2
    rep.add("h''_{N-2}(1)", hN2.deriv1(2), rhs2)

    e = 2 + 3 * t**2 - 4 * t * d
    f = 1 + 2 * t**2 + 3 * t**4 - 4 * t * d - 6 * t**3 * d + 4 * t**2 * d**2
    brace3 = (
        k(hN, 3)
        - 3 * k(hN2, 1) * k(hN, 2)
        - 3 * k(hN1, 2) * k(hN, 1)
        + 3 * e * k(hN1, 2)
        - 6 * k(hN, 2)
        + 6 * k(hN2, 1) * k(hN1, 1) * k(hN, 1)
        - 6 * e * k(hN2, 1) * k(hN1, 1)
        + 6 * k(hN2, 1) * k(hN, 1)
        + 6 * k(hN1, 1) * k(hN, 1)
        + 6 * f * k(hN2, 1)
        - 6 * e * k(hN1, 1)
        + 6 * k(hN, 1)
        + 18 * t**4
        - 6 * t**6
        - 12 * t**3 * d
    )
    rep.add("h'''_{N-3}(1)", hN3.deriv1(3), brace3 / D**3)
    return rep


def verify_ice_identities(N: int) -> CheckReport:
    """Relations among derivatives at z = 0 that hold at the ice point."""
    if N < 4:
        raise ValueError("ice identities need N >= 4")
    hN, hN1, hN2 = h_ice(N), h_ice(N - 1), h_ice(N - 2)

    def k(h: BoundaryFn, j: int):
        return h.deriv0(j) / h.coeff(0)

    ratio_21 = hN2.coeff(0) / hN1.coeff(0)
    rep = CheckReport(f"ice identities N={N}")
    rep.add("h'/h = N/2", k(hN, 1), kappa_closed_form(N, 1))
    rep.add("h''/h closed form", k(hN, 2), kappa_closed_form(N, 2))
    rep.add("h'''/h closed form", k(hN, 3), kappa_closed_form(N, 3))
    rep.add("first-derivative relation", k(hN, 1) - k(hN1, 1) - Fraction(1, 2), 0)
    rep.add(
        "h_{N-1}/h_N",
        hN1.coeff(0) / hN.coeff(0),
        Fraction(3 * (3 * N - 2) * (3 * N - 4), 4 * (2 * N - 1) * (2 * N - 3)),
    )
    rep.add(
        "second-derivative relation",
        k(hN, 2) - k(hN1, 2) - k(hN, 1) - 2 * ratio_21 + Fraction(7, 2),
        0,
    )
    rep.add(
        "third-derivative relation",
        k(hN, 3) - k(hN1, 3) - Fraction(3, 2) * k(hN, 1) ** 2
        - Fraction(21, 2) * (ratio_21 - Fraction(7, 4)),
        0,
    )
    return rep


# ---------------------------------------------------------------------------
# multivariate h_{N,s}


def divided_difference(p: Poly, points: Sequence) -> object:
    """p[x_1, ..., x_k] for a polynomial, exact also for repeated nodes."""
    q = p
    for x in points[:-1]:
        q = (q - q(x)).exact_div(Poly([-x, 1], p.var))
    return q(points[-1])


def h_multi_rows(N: int, s: int, w: WeightParams = ICE, tilde: bool = False) -> list[Poly]:
    """Row functions (z-1)^{s-i} z^{i-1} h_{N-i+1}(z), i = 1..s."""
    z = Poly([0, 1], "z")
    rows = []
    for i in range(1, s + 1):
        h = (h_tilde if tilde else h_fn)(N - i + 1, w).h
        rows.append((z - 1) ** (s - i) * z ** (i - 1) * h)
    return rows


def h_multi(N: int, s: int, points: Sequence, w: WeightParams = ICE) -> Fraction:
    """h_{N,s}(z_1..z_s) = det[f_i(z_j)] / prod_{i<j}(z_i - z_j).

    Evaluated through divided differences so that coincident points give the
    exact confluent limit.
    """
    if not 1 <= s <= N:
        raise ValueError("need 1 <= s <= N")
    if len(points) != s:
        raise ValueError(f"expected {s} points")
    pts = [Fraction(p) for p in points]
    rows = h_multi_rows(N, s, w)
    m = Matrix.build(s, s, lambda i, j: divided_difference(rows[i - 1], pts[:j]))
    # det[f_i(z_j)] = prod_{i<j}(z_j - z_i) det[f_i[z_1..z_j]]
    sign = -1 if (s * (s - 1) // 2) % 2 else 1
    return sign * det_exact(m)
