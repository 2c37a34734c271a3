"""Exact arithmetic substrate: rationals, polynomials, Laurent series, matrices."""

from fractions import Fraction

from .laurent import InsufficientOrder, LaurentSeries, series_residue
from .matrix import DimensionError, Matrix, charpoly, det_exact, det_float
from .polynomial import ZERO_DEGREE, Poly, poly_gcd
from .ratfunc import RatFunc, SingularSubstitution

Rational = Fraction

__all__ = [
    "DimensionError",
    "Fraction",
    "InsufficientOrder",
    "LaurentSeries",
    "Matrix",
    "Poly",
    "RatFunc",
    "Rational",
    "SingularSubstitution",
    "ZERO_DEGREE",
    "charpoly",
    "det_exact",
    "det_float",
    "poly_gcd",
    "series_residue",
]
