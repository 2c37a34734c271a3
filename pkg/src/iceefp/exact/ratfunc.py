"""Rational functions of the anisotropy parameter Delta over Q.

Only Delta is kept symbolic (the weight ratio t is fixed to a rational
number by the caller), which keeps every quantity a univariate rational
function and the arithmetic cheap.
"""

from __future__ import annotations

from fractions import Fraction

from .polynomial import Poly, poly_gcd

VAR = "Delta"


class SingularSubstitution(ZeroDivisionError):
    """Denominator vanishes at the substituted value."""


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced: bool = False):
        num = num if isinstance(num, Poly) else Poly([num], VAR)
        if den is None:
            den = Poly([1], VAR)
        elif not isinstance(den, Poly):
            den = Poly([den], VAR)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly([1], VAR)
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
                lead = Fraction(den.lead())
                if lead != 1:
                    num = num.scale(1 / lead)
                    den = den.scale(1 / lead)
        self.num = num
        self.den = den

    @classmethod
    def delta(cls) -> "RatFunc":
        return cls(Poly([0, 1], VAR), _reduced=True)

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls(Poly([c], VAR), _reduced=True)

    def is_const(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    # -- arithmetic ---------------------------------------------------
    @staticmethod
    def _lift(other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc(Poly([other], VAR), _reduced=True)
        if isinstance(other, Poly):
            return RatFunc(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.num.is_zero():
            return o
        if o.num.is_zero():
            return self
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RatFunc(Poly([], VAR), _reduced=True)
            return RatFunc(self.num.scale(other), self.den, _reduced=True)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.num.is_zero() or o.num.is_zero():
            return RatFunc(Poly([], VAR), _reduced=True)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _reduced=True)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den == 1:
            return f"RatFunc({self.num!r})"
        return f"RatFunc(({self.num!r}) / ({self.den!r}))"

    # -- evaluation ---------------------------------------------------
    def subs(self, value) -> Fraction:
        """Value at ``Delta = value``; raises :class:`SingularSubstitution`."""
        d = self.den(Fraction(value))
        if d == 0:
            raise SingularSubstitution(f"denominator {self.den!r} vanishes at Delta={value}")
        return Fraction(self.num(Fraction(value))) / d

    def pole_order_at(self, value) -> int:
        """Multiplicity of ``value`` as a root of the reduced denominator."""
        root = Poly([-Fraction(value), 1], VAR)
        k, den = 0, self.den
        while True:
            q, r = den.divmod(root)
            if not r.is_zero():
                return k
            den, k = q, k + 1
