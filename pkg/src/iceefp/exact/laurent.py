"""Truncated univariate Laurent series.

A series is ``sum_{k >= val} c_k x^k`` of which only the exponents below
``prec`` are known.  Products and quotients propagate the precision
pessimistically so that a coefficient is never reported unless every term
contributing to it was available.
"""

from __future__ import annotations

from fractions import Fraction

from .polynomial import Poly


class InsufficientOrder(ArithmeticError):
    """A coefficient outside the known window was requested."""


def _zero(c) -> bool:
    return c == 0


class LaurentSeries:
    __slots__ = ("val", "coeffs", "prec")

    def __init__(self, val: int, coeffs, prec: int):
        cs = list(coeffs)[: max(prec - val, 0)]
        # strip leading zeros so that val is the true valuation when known
        while cs and _zero(cs[0]):
            cs.pop(0)
            val += 1
        if not cs:
            val = prec
        self.val = val
        self.coeffs = cs
        self.prec = prec

    @classmethod
    def from_poly(cls, p: Poly, prec: int, shift: int = 0) -> "LaurentSeries":
        """``x^shift * p(x)`` known up to (excluding) exponent ``prec``."""
        return cls(shift, list(p.coeffs) + [0] * max(0, prec - shift - len(p.coeffs)), prec)

    @classmethod
    def monomial(cls, k: int, prec: int, c=1) -> "LaurentSeries":
        return cls(k, [c] + [0] * max(0, prec - k - 1), prec)

    @classmethod
    def geometric(cls, a, prec: int) -> "LaurentSeries":
        """``1 / (1 - a x)`` to the given precision."""
        cs, p = [], 1
        for _ in range(max(prec, 0)):
            cs.append(p)
            p = p * a
        return cls(0, cs, prec)

    def __getitem__(self, k: int):
        if k >= self.prec:
            raise InsufficientOrder(f"coefficient {k} requested, series known below {self.prec}")
        if k < self.val:
            return 0
        i = k - self.val
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        terms = [f"({c})x^{self.val + i}" for i, c in enumerate(self.coeffs) if not _zero(c)]
        return (" + ".join(terms) or "0") + f" + O(x^{self.prec})"

    def _lift(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return other
        # exact operands get enough precision not to limit the result
        if isinstance(other, Poly):
            prec = max(self.prec, self.prec - self.val + len(other.coeffs), len(other.coeffs))
            return LaurentSeries.from_poly(other, prec)
        return LaurentSeries(0, [other], max(self.prec, self.prec - self.val + 1, 1))

    def __add__(self, other):
        o = self._lift(other)
        prec = min(self.prec, o.prec)
        lo = min(self.val, o.val)
        cs = [self[k] + o[k] for k in range(lo, prec)] if lo < prec else []
        return LaurentSeries(lo, cs, prec)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.val, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, (LaurentSeries, Poly)):
            return LaurentSeries(self.val, [c * other for c in self.coeffs], self.prec)
        o = self._lift(other)
        prec = min(self.prec + o.val, o.prec + self.val)
        val = self.val + o.val
        n = max(prec - val, 0)
        out = [0] * n
        for i, a in enumerate(self.coeffs[:n]):
            if _zero(a):
                continue
            for j, b in enumerate(o.coeffs[: n - i]):
                out[i + j] = out[i + j] + a * b
        return LaurentSeries(val, out, prec)

    def __rmul__(self, other):
        return self.__mul__(other)

    def inverse(self) -> "LaurentSeries":
        if self.is_zero():
            raise ZeroDivisionError("inverse of a series with unknown or zero leading term")
        a0 = self.coeffs[0]
        inv0 = Fraction(1, a0) if isinstance(a0, int) else 1 / a0
        n = self.prec - self.val  # relative precision
        out = [inv0]
        for k in range(1, n):
            acc = 0
            for j in range(1, min(k, len(self.coeffs) - 1) + 1):
                acc = acc + self.coeffs[j] * out[k - j]
            out.append(-acc * inv0)
        return LaurentSeries(-self.val, out, -self.val + n)

    def __truediv__(self, other):
        if not isinstance(other, (LaurentSeries, Poly)):
            inv = Fraction(1, other) if isinstance(other, int) else 1 / other
            return self * inv
        return self * self._lift(other).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return LaurentSeries(0, [1], self.prec - self.val)
        result = self
        for _ in range(n - 1):
            result = result * self
        return result


def series_residue(f: LaurentSeries):
    """Coefficient of ``x^{-1}``."""
    return f[-1]
