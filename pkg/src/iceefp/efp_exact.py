"""Exact EFP oracles: row-transfer enumeration and residue extraction.

Enumeration works in the line picture: thick lines enter through the top
and the left boundary, every row absorbs one of them, and a row is fixed
completely by the sets of occupied vertical edges above and below it.

The residue routes expand the multiple-integral integrands in shifted
variables around each pole, divide out the pairwise coupling factors in
the truncated power-series ring and contract with the determinant of row
functions without ever forming the symmetric polynomial h_{N,s}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial, lcm

import numpy as np

from .boundary import ICE, WeightParams, h_fn
from .exact import Poly, RatFunc, SingularSubstitution
from .report import CheckReport

ENUM_CAP = 12


class ResourceError(RuntimeError):
    """Requested size exceeds the enumeration cap."""


class InvariantViolation(AssertionError):
    """An exact cross-check that must hold did not."""


@dataclass(frozen=True)
class EfpQuery:
    N: int
    r: int
    s: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if not 1 <= self.r <= self.N:
            raise ValueError(f"r={self.r} outside 1..{self.N}")
        if not 0 <= self.s <= self.N:
            raise ValueError(f"s={self.s} outside 0..{self.N}")

    def trivial_value(self):
        """Known value for degenerate geometry, else None."""
        if self.s > self.r:
            return Fraction(0)
        if self.s == 0 or self.r == self.N:
            return Fraction(1)
        return None


@dataclass(frozen=True)
class IkDecomposition:
    N: int
    s: int
    values: tuple

    @property
    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))


def asm_count(N: int) -> int:
    """Number of N x N alternating-sign matrices, prod (3j+1)!/(N+j)!."""
    if N < 1:
        raise ValueError("N must be >= 1")
    num, den = 1, 1
    for j in range(N):
        num *= factorial(3 * j + 1)
        den *= factorial(N + j)
    q, rem = divmod(num, den)
    assert rem == 0
    return q


# ---------------------------------------------------------------------------
# enumeration


def _row_profile(up: frozenset, down: frozenset, N: int):
    """Vertex counts (#b, #c) of a row, or None if the row is impossible.

    Columns are scanned right to left, starting from an empty horizontal
    edge at the right boundary; the left boundary edge must come out occupied.
    """
    h = 0
    nb = nc = 0
    for col in range(N, 0, -1):
        u, d = int(col in up), int(col in down)
        left = h + u - d
        if left not in (0, 1):
            return None
        if u != d:
            nc += 1
        elif u != left:
            nb += 1
        h = left
    if h != 1:
        return None
    return nb, nc


def _interlacing(up: list[int]):
    """Sets d_1 < ... < d_{k-1} with u_i <= d_i <= u_{i+1}."""
    k = len(up)

    def rec(i: int, lo: int):
        if i == k - 1:
            yield ()
            return
        for d in range(max(up[i], lo), up[i + 1] + 1):
            for rest in rec(i + 1, d + 1):
                yield (d,) + rest

    for tup in rec(0, 1):
        yield frozenset(tup)


def _transfer(N: int, frozen_cols: int, frozen_rows: int, weight):
    """Weighted sum over configurations; rows 1..frozen_rows keep columns
    1..frozen_cols occupied below them."""
    if N > ENUM_CAP:
        raise ResourceError(f"enumeration capped at N={ENUM_CAP}")
    block = frozenset(range(1, frozen_cols + 1))
    full = frozenset(range(1, N + 1))
    states = {full: 1}
    for row in range(1, N + 1):
        nxt: dict = {}
        for up, acc in states.items():
            for down in _interlacing(sorted(up)):
                if row <= frozen_rows and not block <= down:
                    continue
                prof = _row_profile(up, down, N)
                if prof is None:
                    continue
                nxt[down] = nxt.get(down, 0) + acc * weight(*prof)
        states = nxt
    return states.get(frozenset(), 0)


def _ice_weight(nb: int, nc: int) -> int:
    return 1


def _generic_weight(w: WeightParams):
    c2 = w.c_squared

    def weight(nb: int, nc: int):
        # per-row c-count is odd, (nc-1)/2 pairs of c beyond the mandatory one
        return w.t**nb * c2 ** ((nc - 1) // 2)

    return weight


def enumerate_count(N: int, r: int | None = None, s: int = 0) -> int:
    """Number of DWBC configurations with the top-left s x (N-r) block frozen."""
    return _transfer(N, 0 if r is None else N - r, s, _ice_weight)


def state_sum(N: int) -> Poly:
    """Normalised partition function S_N as a polynomial in t with Delta-polynomial coefficients."""
    if N < 1:
        raise ValueError("N must be >= 1")
    t = Poly([0, 1], "t")
    c2 = Poly([Poly([1], "Delta"), Poly([0, -2], "Delta"), Poly([1], "Delta")], "t")
    one = Poly([Poly([1], "Delta")], "t")

    def weight(nb: int, nc: int):
        return t**nb * c2 ** ((nc - 1) // 2) * one

    return _transfer(N, 0, 0, weight)


def efp_enumerate(q: EfpQuery, w: WeightParams = ICE) -> Fraction:
    """EFP as a ratio of weighted configuration sums."""
    triv = q.trivial_value()
    if triv is not None:
        if q.N > ENUM_CAP:
            raise ResourceError(f"enumeration capped at N={ENUM_CAP}")
        return triv
    weight = _ice_weight if w == ICE else _generic_weight(w)
    num = _transfer(q.N, q.N - q.r, q.s, weight)
    den = _transfer(q.N, 0, 0, weight)
    return Fraction(num) / den if isinstance(num, int) else num / den


# ---------------------------------------------------------------------------
# residue engine


def _series(p: Poly, n: int) -> list:
    return p.padded(n)


def _inv_pow_series(c, k: int, n: int) -> list:
    """Coefficients of (c + w)^(-k) up to w^(n-1)."""
    out = []
    for m in range(n):
        out.append(comb(k + m - 1, m) * (-1) ** m / _pow(c, k + m) if k else Fraction(int(m == 0)))
    return out


def _pow(c, k):
    if isinstance(c, int):
        return Fraction(c) ** k
    return c**k


def _mul_series(a: list, b: list, n: int) -> list:
    out = [0] * n
    for i in range(n):
        if a[i] == 0:
            continue
        for j in range(n - i):
            out[i + j] = out[i + j] + a[i] * b[j]
    return out


def _divide_coupling(T: np.ndarray, j: int, k: int, c0, alpha, beta, gamma) -> np.ndarray:
    """Multiply T by 1/(c0 + alpha w_j + beta w_k + gamma w_j w_k), truncated to T's shape."""
    A = np.moveaxis(T, (j, k), (0, 1))
    B = np.empty_like(A)
    inv = Fraction(1) / c0 if isinstance(c0, (int, Fraction)) else c0.inverse()
    mj, mk = A.shape[0], A.shape[1]
    for a in range(mj):
        for b in range(mk):
            acc = A[a, b]
            if a:
                acc = acc - B[a - 1, b] * alpha
            if b:
                acc = acc - B[a, b - 1] * beta
            if a and b:
                acc = acc - B[a - 1, b - 1] * gamma
            B[a, b] = acc * inv
    return np.moveaxis(B, (0, 1), (j, k))


def _contract_det(T: np.ndarray, rows: list[list[list]]):
    """sum_a T[a] det[rows[j][i][a_j]] over all multi-indices a.

    rows[j][i] holds, for variable j and determinant row i, the coefficient
    vector aligned with axis j of T.
    """
    s = T.ndim
    layer = {0: T}
    for j in range(s):
        nxt: dict = {}
        for mask, tens in layer.items():
            for i in range(s):
                if mask >> i & 1:
                    continue
                sign = -1 if bin(mask >> (i + 1)).count("1") % 2 else 1
                vec = np.array(rows[j][i], dtype=object)
                part = np.tensordot(vec, tens, axes=(0, 0))
                if sign < 0:
                    part = -part
                key = mask | (1 << i)
                nxt[key] = nxt[key] + part if key in nxt else part
        layer = nxt
    (val,) = layer.values()
    return val.item() if isinstance(val, np.ndarray) else val


def _point_residue(orders, analytic, couplings, det_rows):
    """Residue at one point of a product of univariate poles, couplings and a determinant.

    orders[j]: pole order in w_j; analytic[j]: series of w_j^{m_j} * factor_j;
    couplings: (j, k, c0, alpha, beta, gamma); det_rows[j][i]: Taylor
    coefficients of row function i at the point in variable j.
    """
    if any(m <= 0 for m in orders):
        return 0
    T = np.array(1, dtype=object)
    for j, m in enumerate(orders):
        T = np.multiply.outer(T, np.array(analytic[j][:m], dtype=object))
    for j, k, c0, al, be, ga in couplings:
        T = _divide_coupling(T, j, k, c0, al, be, ga)
    # coefficient of w^{m-1}: pair T[a] with row coefficient m-1-a
    flipped = [
        [list(reversed(list(det_rows[j][i][: orders[j]]) + [0] * (orders[j] - len(det_rows[j][i][: orders[j]]))))
         for i in range(len(orders))]
        for j in range(len(orders))
    ]
    return _contract_det(T, flipped)


def _scale_rows(rows: list[Poly]) -> tuple[list[Poly], Fraction]:
    """Clear denominators of rational row polynomials; returns (rows, factor)."""
    factor = Fraction(1)
    out = []
    for p in rows:
        if all(isinstance(c, (int, Fraction)) for c in p.coeffs):
            d = lcm(*(Fraction(c).denominator for c in p.coeffs)) if p.coeffs else 1
            factor /= d
            out.append(p.map(lambda c, d=d: int(Fraction(c) * d)))
        else:
            out.append(p)
    return out, factor


def _row_functions(N: int, s: int, w: WeightParams, tilde: bool) -> list[Poly]:
    z = Poly([0, 1], "z")
    rows = []
    for i in range(1, s + 1):
        h = h_fn(N - i + 1, w).h
        if tilde:
            h = h.reverse(N - i)
        rows.append((z - 1) ** (s - i) * z ** (i - 1) * h)
    return rows


def efp_mir_direct(q: EfpQuery, w: WeightParams = ICE) -> Fraction:
    """EFP from the s-fold integral with all contours around the origin."""
    triv = q.trivial_value()
    if triv is not None:
        return triv
    N, r, s = q.N, q.r, q.s
    t, d = w.t, w.delta
    rows, factor = _scale_rows(_row_functions(N, s, w, tilde=False))
    ice = w == ICE
    lin = t**2 - 2 * d * t
    analytic = []
    for j in range(1, s + 1):
        k = s - j
        num = Poly([1, lin], "w") ** k
        # 1/(w-1)^(k+1) has integer coefficients
        inv = [(-1) ** (k + 1) * comb(k + m, m) for m in range(r)]
        analytic.append(_mul_series(_series(num, r), inv, r))
    couplings = [(j, k, 1, -2 * d * t, 0, t**2) for j in range(s) for k in range(j + 1, s)]
    if ice:
        couplings = [(j, k, 1, -1, 0, 1) for j, k, *_ in couplings]
    det_rows = [[p.coeffs for p in rows] for _ in range(s)]
    res = _point_residue([r] * s, analytic, couplings, det_rows)
    return (-1) ** s * Fraction(res) * factor


# ---------------------------------------------------------------------------
# I_k decomposition of the deformed integrand


def _symbolic_weights() -> WeightParams:
    return WeightParams(RatFunc.delta(), Fraction(1))


def _j_point_residue(N: int, r: int, s: int, point: tuple[int, ...], w: WeightParams, rows: list[Poly]):
    t, d = w.t, w.delta
    lin = t**2 - 2 * d * t
    orders, analytic, det_rows = [], [], []
    for j, p in enumerate(point, start=1):
        k = s - j
        if p == 0:
            m = N - r
            num = _series(Poly([lin, 1], "w") ** k, m)
            den = _inv_pow_series(-1, k + 1, m)
        else:
            m = k + 1
            num = _series(Poly([lin + 1, 1], "w") ** k, m)
            den = _inv_pow_series(1, N - r, m)
        orders.append(m)
        analytic.append(_mul_series(num, den, m))
        det_rows.append([f.taylor_shift(p).coeffs for f in rows])
    couplings = []
    for j in range(s):
        for k in range(j + 1, s):
            pj, pk = point[j], point[k]
            couplings.append((j, k, t**2 - 2 * d * t * pk + pj * pk, pk, pj - 2 * d * t, 1))
    return _point_residue(orders, analytic, couplings, det_rows)


def _subs_ice(x) -> Fraction:
    if isinstance(x, RatFunc):
        try:
            return x.subs(Fraction(1, 2))
        except SingularSubstitution as exc:
            raise InvariantViolation(f"uncancelled pole at the ice point: {exc}") from exc
    return Fraction(x)


def j_residues(N: int, s: int, w: WeightParams | None = None, r: int | None = None) -> list:
    """[I_0, ..., I_s] before any substitution, at weights w (symbolic Delta by default)."""
    if w is None:
        w = _symbolic_weights()
    r = N - s if r is None else r
    rows = _row_functions(N, s, w, tilde=True)
    sums = []
    for k in range(s + 1):
        acc = 0
        for zeros in combinations(range(s), k):
            point = tuple(0 if j in zeros else 1 for j in range(s))
            acc = acc + _j_point_residue(N, r, s, point, w, rows)
        sums.append(acc)
    return sums


@lru_cache(maxsize=None)
def ik_decomposition(N: int, s: int) -> IkDecomposition:
    """I_0..I_s at the ice point, with Delta kept symbolic until each I_k is summed."""
    if not 1 <= s <= N - 1:
        raise ValueError("need 1 <= s <= N-1")
    values = tuple(_subs_ice(x) for x in j_residues(N, s))
    dec = IkDecomposition(N, s, values)
    if values[0] != 1:
        raise InvariantViolation(f"I_0 = {values[0]} != 1")
    if values[-1] != all_zeros_value(N, s):
        raise InvariantViolation(f"I_s = {values[-1]} != {all_zeros_value(N, s)}")
    return dec


def all_zeros_value(N: int, s: int) -> Fraction:
    """(-1)^s h_N(0) ... h_{N-s+1}(0) at the ice point."""
    acc = Fraction((-1) ** s)
    for i in range(s):
        acc *= h_fn(N - i).coeff(0)
    return acc


def verify_lemmas(N: int, s: int, w: WeightParams | None = None) -> CheckReport:
    """All-ones residue equals 1 at w; all-zeros residue matches the product formula at the ice point."""
    if w is None:
        w = WeightParams(Fraction(1, 3), Fraction(3, 2))
    r = N - s
    rep = CheckReport(f"lemmas N={N} s={s}")
    rows = _row_functions(N, s, w, tilde=True)
    rep.add(f"all-ones residue (Delta={w.delta}, t={w.t})",
            Fraction(_j_point_residue(N, r, s, (1,) * s, w, rows)), 1)
    dec = ik_decomposition(N, s)
    rep.add("all-zeros residue at ice point", dec.values[-1], all_zeros_value(N, s))
    return rep
