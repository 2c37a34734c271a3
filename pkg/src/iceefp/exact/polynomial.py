"""Dense univariate polynomials with exact coefficients.

Coefficients are stored in ascending order of degree.  They may be
``int``/``Fraction`` or any object supporting ring arithmetic and comparison
with ``0`` (a nested :class:`Poly` in a different variable, a
:class:`~iceefp.exact.ratfunc.RatFunc`, ...).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

ZERO_DEGREE = -1  # degree reported for the zero polynomial


def _is_zero(c) -> bool:
    return c == 0


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


class Poly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "z"):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    # -- construction -------------------------------------------------
    @classmethod
    def const(cls, c, var: str = "z") -> "Poly":
        return cls([c], var)

    @classmethod
    def monomial(cls, k: int, c=1, var: str = "z") -> "Poly":
        return cls([0] * k + [c], var)

    @classmethod
    def x(cls, var: str = "z") -> "Poly":
        return cls([0, 1], var)

    # -- basic properties ---------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            if k == 0:
                terms.append(f"{c}")
            elif k == 1:
                terms.append(f"({c})*{self.var}")
            else:
                terms.append(f"({c})*{self.var}^{k}")
        return " + ".join(terms)

    def __hash__(self):
        return hash((self.coeffs, self.var))

    # -- coercion -----------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly) and other.var == self.var:
            return other
        return Poly([other], self.var)

    def __eq__(self, other):
        if isinstance(other, Poly) and other.var == self.var:
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.coeffs
            return len(self.coeffs) == 1 and self.coeffs[0] == other
        if isinstance(other, Poly):
            return False
        return len(self.coeffs) <= 1 and self[0] == other

    def __ne__(self, other):
        return not self.__eq__(other)

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not (isinstance(other, Poly) and other.var == self.var):
            if _is_zero(other):
                return Poly([], self.var)
            return Poly([c * other for c in self.coeffs], self.var)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly([], self.var)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if _is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly(out, self.var)

    def __rmul__(self, other):
        if isinstance(other, Poly) and other.var == self.var:
            return other * self
        if _is_zero(other):
            return Poly([], self.var)
        return Poly([other * c for c in self.coeffs], self.var)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly([1], self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Poly":
        return Poly([x * c for x in self.coeffs], self.var)

    # -- division over a field ----------------------------------------
    def divmod(self, other: "Poly"):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lead = other.lead()
        if len(rem) - 1 < db:
            return Poly([], self.var), Poly(rem, self.var)
        quot = [0] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db]
            if _is_zero(c):
                continue
            q = _div(c, lead)
            quot[k] = q
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - q * b
        return Poly(quot, self.var), Poly(rem[:db], self.var)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other) -> "Poly":
        """Quotient of an exact division; raises if a remainder is left."""
        if not isinstance(other, Poly):
            if _is_zero(other):
                raise ZeroDivisionError("division by zero")
            return self.scale(_div(1, other))
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError(f"inexact polynomial division, remainder {r!r}")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(_div(1, self.lead()))

    # -- calculus and evaluation --------------------------------------
    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, k: int = 1) -> "Poly":
        cs = list(self.coeffs)
        for _ in range(k):
            cs = [i * cs[i] for i in range(1, len(cs))]
        return Poly(cs, self.var)

    def taylor_shift(self, a) -> "Poly":
        """Return ``p(x + a)`` by repeated synthetic division."""
        cs = list(self.coeffs)
        n = len(cs)
        if _is_zero(a):
            return Poly(cs, self.var)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] = cs[j] + a * cs[j + 1]
        return Poly(cs, self.var)

    def reverse(self, n: int | None = None) -> "Poly":
        """``x^n p(1/x)``; ``n`` defaults to the degree."""
        if n is None:
            n = self.degree
        if self.degree > n:
            raise ValueError("reversal length below degree")
        cs = list(self.coeffs) + [0] * (n + 1 - len(self.coeffs))
        return Poly(cs[::-1], self.var)

    def truncate(self, n: int) -> "Poly":
        """Keep coefficients of degree < n."""
        return Poly(self.coeffs[:n], self.var)

    def map(self, f) -> "Poly":
        return Poly([f(c) for c in self.coeffs], self.var)

    def padded(self, n: int) -> list:
        cs = list(self.coeffs[:n])
        return cs + [0] * (n - len(cs))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over a field (Euclid)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a
