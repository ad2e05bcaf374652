"""Exact 3x3 matrices and the Tribonacci / Tribonacci-Lucas matrix sequences.

``Mat3`` holds Python ints or Fractions; entries that become integral are
stored back as ints so the common (unimodular) case stays in integer
arithmetic.  ``IntMat3`` and ``RatMat3`` are the same class; use
:meth:`Mat3.is_integral` to tell them apart.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from trimat.errors import SingularMatrix
from trimat.exact import tribonacci_lucas_triple, tribonacci_triple


def _norm(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    raise TypeError(f"matrix entries must be int or Fraction, not {type(x).__name__}")


class Mat3:
    __slots__ = ("_e",)

    def __init__(self, rows: Iterable[Iterable]):
        e = tuple(_norm(x) for row in rows for x in row)
        if len(e) != 9:
            raise ValueError("Mat3 needs exactly 3 rows of 3 entries")
        self._e = e

    @classmethod
    def _raw(cls, entries: tuple) -> "Mat3":
        obj = cls.__new__(cls)
        obj._e = entries
        return obj

    @classmethod
    def identity(cls) -> "Mat3":
        return cls._raw((1, 0, 0, 0, 1, 0, 0, 0, 1))

    @classmethod
    def zero(cls) -> "Mat3":
        return cls._raw((0,) * 9)

    def __getitem__(self, ij):
        i, j = ij
        return self._e[3 * i + j]

    @property
    def rows(self) -> tuple:
        e = self._e
        return (e[0:3], e[3:6], e[6:9])

    def entries(self) -> tuple:
        return self._e

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for x in self._e)

    def __eq__(self, other):
        if not isinstance(other, Mat3):
            return NotImplemented
        return self._e == other._e

    def __hash__(self):
        return hash(self._e)

    def __add__(self, other: "Mat3") -> "Mat3":
        return Mat3._raw(tuple(_norm(a + b) for a, b in zip(self._e, other._e)))

    def __sub__(self, other: "Mat3") -> "Mat3":
        return Mat3._raw(tuple(_norm(a - b) for a, b in zip(self._e, other._e)))

    def __neg__(self) -> "Mat3":
        return Mat3._raw(tuple(-a for a in self._e))

    def __mul__(self, scalar) -> "Mat3":
        if isinstance(scalar, Mat3):
            return NotImplemented
        return Mat3._raw(tuple(_norm(scalar * a) for a in self._e))

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Mat3":
        return Mat3._raw(tuple(_norm(Fraction(a) / scalar) for a in self._e))

    def __matmul__(self, other: "Mat3") -> "Mat3":
        return mat_mul(self, other)

    def __repr__(self):
        return f"Mat3({[list(r) for r in self.rows]!r})"

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in row) for row in self.rows)


IntMat3 = RatMat3 = Mat3

IDENTITY = Mat3.identity()
TRIB_COMPANION = Mat3([[1, 1, 1], [1, 0, 0], [0, 1, 0]])


def mat_mul(A: Mat3, B: Mat3) -> Mat3:
    a0, a1, a2, a3, a4, a5, a6, a7, a8 = A._e
    b0, b1, b2, b3, b4, b5, b6, b7, b8 = B._e
    out = (
        a0 * b0 + a1 * b3 + a2 * b6, a0 * b1 + a1 * b4 + a2 * b7, a0 * b2 + a1 * b5 + a2 * b8,
        a3 * b0 + a4 * b3 + a5 * b6, a3 * b1 + a4 * b4 + a5 * b7, a3 * b2 + a4 * b5 + a5 * b8,
        a6 * b0 + a7 * b3 + a8 * b6, a6 * b1 + a7 * b4 + a8 * b7, a6 * b2 + a7 * b5 + a8 * b8,
    )
    if type(out[0]) is int and all(type(x) is int for x in out):
        return Mat3._raw(out)
    return Mat3._raw(tuple(_norm(x) for x in out))


def determinant(A: Mat3):
    a, b, c, d, e, f, g, h, i = A._e
    return _norm(a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g))


def adjugate(A: Mat3) -> Mat3:
    a, b, c, d, e, f, g, h, i = A._e
    return Mat3._raw(tuple(_norm(x) for x in (
        e * i - f * h, c * h - b * i, b * f - c * e,
        f * g - d * i, a * i - c * g, c * d - a * f,
        d * h - e * g, b * g - a * h, a * e - b * d,
    )))


def adjugate_inverse(A: Mat3) -> Mat3:
    """Exact inverse, adj(A) / det(A)."""
    det = determinant(A)
    if det == 0:
        raise SingularMatrix("matrix has determinant 0")
    adj = adjugate(A)
    if det == 1:
        return adj
    return adj / det


def mat_pow(A: Mat3, e: int) -> Mat3:
    """A**e by square-and-multiply; negative e inverts first. A**0 is I, even for singular A."""
    if e == 0:
        return IDENTITY
    if e < 0:
        A = adjugate_inverse(A)
        e = -e
    result = None
    base = A
    while True:
        if e & 1:
            result = base if result is None else mat_mul(result, base)
        e >>= 1
        if not e:
            return result
        base = mat_mul(base, base)


def _column_product(a: tuple, b: tuple) -> tuple:
    # first column of t(i) @ t(j) given the first columns of t(i) and t(j)
    a0, a1, a2 = a
    am2 = a0 - a1 - a2
    am3 = a1 - a2 - am2
    b0, b1, b2 = b
    return (
        a0 * b0 + (a1 + a2) * b1 + a1 * b2,
        a1 * b0 + (a2 + am2) * b1 + a2 * b2,
        a2 * b0 + (am2 + am3) * b1 + am2 * b2,
    )


def companion_power_column(n: int) -> tuple:
    """First column (T_{n+1}, T_n, T_{n-1}) of TRIB_COMPANION**n.

    Square-and-multiply on the companion matrix, carrying only the first
    column: every power is a Tribonacci matrix and the column fixes the rest.
    """
    base = (1, 1, 0) if n >= 0 else (0, 0, 1)
    e = abs(n)
    result = (1, 0, 0)
    while e:
        if e & 1:
            result = _column_product(result, base)
        e >>= 1
        if e:
            base = _column_product(base, base)
    return result


def _layout(w_next, w, w_prev) -> Mat3:
    # rows (w_{n+1}, w_n + w_{n-1}, w_n), shifted down one index per row
    w_m2 = w_next - w - w_prev
    w_m3 = w - w_prev - w_m2
    return Mat3._raw((
        w_next, w + w_prev, w,
        w, w_prev + w_m2, w_prev,
        w_prev, w_m2 + w_m3, w_m2,
    ))


def t_matrix(n: int) -> Mat3:
    """The Tribonacci matrix at signed index n, built from T_{n+1}..T_{n-3}."""
    return _layout(*tribonacci_triple(n))


def k_matrix(n: int) -> Mat3:
    """The Tribonacci-Lucas matrix at signed index n, built from K_{n+1}..K_{n-3}."""
    return _layout(*tribonacci_lucas_triple(n))


K0 = k_matrix(0)

# coefficient of T_{-m-n+shift} in each expansion of K_{-m} K_{-n}
KK_FORMS = {
    "A": {2: 9, 1: -12, 0: -2, -1: 4, -2: 1},
    "B": {0: 1, -1: 4, -2: 10, -3: 12, -4: 9},
    "C": {0: 1, 1: -8, 2: 18, 3: -8, 4: 1},
}


def kk_product_expansion(m: int, n: int, form: str) -> Mat3:
    """K_{-m} K_{-n} written as a combination of T matrices around index -m-n."""
    try:
        coeffs = KK_FORMS[form]
    except KeyError:
        raise ValueError(f"form must be one of {sorted(KK_FORMS)}, got {form!r}") from None
    total = Mat3.zero()
    for shift, c in coeffs.items():
        total = total + c * t_matrix(-m - n + shift)
    return total


def combination(terms: Iterable[tuple]) -> Mat3:
    """Sum of coeff * matrix over (coeff, matrix) pairs."""
    total = Mat3.zero()
    for c, M in terms:
        total = total + c * M
    return total
