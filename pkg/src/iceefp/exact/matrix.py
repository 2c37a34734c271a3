"""Small dense matrices with exact entries and fraction-free determinants."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, Sequence

from .polynomial import Poly


class DimensionError(ValueError):
    pass


class Matrix:
    """Dense matrix stored row-major; entries are any exact ring elements."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = list(entries)
        if rows <= 0 or cols <= 0:
            raise DimensionError("matrix dimensions must be positive")
        if len(entries) != rows * cols:
            raise DimensionError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows, self.cols, self.entries = rows, cols, entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        return cls(len(rows), len(rows[0]), [x for row in rows for x in row])

    @classmethod
    def build(cls, n: int, m: int, f: Callable[[int, int], object]) -> "Matrix":
        """Entries ``f(i, j)`` with 1-based indices."""
        return cls(n, m, [f(i, j) for i in range(1, n + 1) for j in range(1, m + 1)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.build(n, n, lambda i, j: Fraction(int(i == j)))

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "Matrix":
        return cls(n, n if m is None else m, [Fraction(0)] * (n * (n if m is None else m)))

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls.build(n, n, lambda i, j: values[i - 1] if i == j else Fraction(0))

    @classmethod
    def antidiag(cls, n: int) -> "Matrix":
        """Unit anti-diagonal ``delta_{i+j, n+1}``."""
        return cls.build(n, n, lambda i, j: Fraction(int(i + j == n + 1)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and all(a == b for a, b in zip(self.entries, other.entries))
        )

    def __repr__(self):
        return "Matrix(" + repr(self.tolist()) + ")"

    def __str__(self):
        return "[" + "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows)) + "]"

    def map(self, f) -> "Matrix":
        return Matrix(self.rows, self.cols, [f(x) for x in self.entries])

    def transpose(self) -> "Matrix":
        return Matrix.build(self.cols, self.rows, lambda i, j: self[j - 1, i - 1])

    T = property(transpose)

    def _same_shape(self, other: "Matrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "Matrix":
        return self.map(lambda x: -x)

    def scale(self, c) -> "Matrix":
        return self.map(lambda x: x * c)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionError("inner dimensions differ")
        n, k, m = self.rows, self.cols, other.cols
        out = []
        for i in range(n):
            row = self.entries[i * k:(i + 1) * k]
            for j in range(m):
                acc = 0
                for l in range(k):
                    a = row[l]
                    if a != 0:
                        acc = acc + a * other.entries[l * m + j]
                out.append(acc)
        return Matrix(n, m, out)

    def submatrix(self, n: int) -> "Matrix":
        """Leading ``n x n`` block."""
        return Matrix.build(n, n, lambda i, j: self[i - 1, j - 1])

    def trace(self):
        acc = 0
        for i in range(min(self.rows, self.cols)):
            acc = acc + self[i, i]
        return acc


def _bareiss(a: list[list], exact_div) -> object:
    """Determinant of a square array over an integral domain (in place)."""
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = exact_div(row_i[j] * akk - aik * row_k[j], prev)
        prev = akk
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def det_exact(m: Matrix):
    """Exact determinant by Bareiss fraction-free elimination.

    Rational matrices are scaled row-wise to integers first; matrices over a
    polynomial ring use exact polynomial division.
    """
    if not m.is_square:
        raise DimensionError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    rows = m.tolist()
    if all(isinstance(x, (int, Fraction)) for x in m.entries):
        scale = Fraction(1)
        int_rows = []
        for row in rows:
            d = lcm(*(Fraction(x).denominator for x in row))
            scale /= d
            int_rows.append([int(Fraction(x) * d) for x in row])
        return Fraction(_bareiss(int_rows, lambda x, y: x // y)) * scale

    def div(x, y):
        if isinstance(x, Poly):
            return x.exact_div(y)
        if isinstance(y, Poly):
            if y.degree > 0:
                raise ArithmeticError("constant divided by a non-constant polynomial")
            y = y[0]
        return x / y if not (isinstance(x, int) and isinstance(y, int)) else Fraction(x, y)

    return _bareiss(rows, div)


def charpoly(m: Matrix, var: str = "lambda") -> Poly:
    """``det(I - lambda m)`` as a polynomial in ``lambda``."""
    if not m.is_square:
        raise DimensionError("characteristic polynomial of a non-square matrix")
    n = m.rows
    entries = []
    for i in range(n):
        for j in range(n):
            entries.append(Poly([Fraction(int(i == j)), -m[i, j]], var))
    d = det_exact(Matrix(n, n, entries))
    return d if isinstance(d, Poly) else Poly([d], var)


def det_float(a: Sequence[Sequence], one=1.0):
    """Determinant by Gaussian elimination with partial pivoting.

    Works for any numeric type supporting ``abs`` and field arithmetic
    (``float``, ``complex``, ``mpmath.mpf``).
    """
    a = [list(r) for r in a]
    n = len(a)
    det = one
    for k in range(n):
        p = max(range(k, n), key=lambda i: abs(a[i][k]))
        if a[p][k] == 0:
            return 0 * one
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        akk = a[k][k]
        det = det * akk
        for i in range(k + 1, n):
            f = a[i][k] / akk
            if f != 0:
                ri, rk = a[i], a[k]
                for j in range(k + 1, n):
                    ri[j] = ri[j] - f * rk[j]
    return det
