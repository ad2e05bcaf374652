"""Partial sums of negatively indexed terms, sum_{i=0}^{n-1} X_{-mi-j}.

``sum_closed`` evaluates the closed form
    (X_{-mn+m-j} + X_{-mn-m-j} + (1 - K_{-m}) X_{-mn-j}
     - X_{-m-j} - X_{-j+m} - (1 - K_{-m}) X_{-j}) / (K_{-m} - K_m)
for X in {T, K} (scalars) or the matching matrices, ``sum_matrix_form`` the
alternative (T_{-mn+m-j} - T_{m-j}) (I - T_m)^{-1}, and ``sum_direct`` adds
the terms up one by one as the oracle for both.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from trimat.errors import SingularMatrix, ZeroDenominator
from trimat.exact import tribonacci, tribonacci_lucas
from trimat.matrices import IDENTITY, Mat3, adjugate_inverse, determinant, k_matrix, t_matrix

FAMILIES = ("T", "K")
LEVELS = ("scalar", "matrix")


@dataclass(frozen=True)
class SumQuery:
    family: str
    level: str
    m: int
    j: int
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if self.level not in LEVELS:
            raise ValueError(f"level must be one of {LEVELS}, got {self.level!r}")
        if self.m < 1:
            raise ValueError(f"stride m must be >= 1, got {self.m}")
        if self.n < 1:
            raise ValueError(f"term count n must be >= 1, got {self.n}")
        if self.j < 0:
            raise ValueError(f"offset j must be >= 0, got {self.j}")
        if self.j >= self.m:
            warnings.warn(f"offset j={self.j} >= stride m={self.m} is outside the "
                          "proven range; compare against sum_direct", stacklevel=3)

    def term(self, index: int):
        """X at a signed index, scalar or matrix per this query."""
        if self.level == "scalar":
            return tribonacci(index) if self.family == "T" else tribonacci_lucas(index)
        return t_matrix(index) if self.family == "T" else k_matrix(index)


def _denominator(m: int) -> int:
    d = tribonacci_lucas(-m) - tribonacci_lucas(m)
    if d == 0:
        raise ZeroDenominator(f"K_-{m} == K_{m}")
    return d


def _closed(q: SumQuery, first_correction: int):
    m, j, n = q.m, q.j, q.n
    weight = 1 - tribonacci_lucas(-m)
    X = q.term
    upper = X(-m * n + m - j) + X(-m * n - m - j) + weight * X(-m * n - j)
    lower = X(first_correction) + X(-j + m) + weight * X(-j)
    diff = upper - lower
    d = _denominator(m)
    if q.level == "scalar":
        return Fraction(diff, d)
    return diff / d


def sum_closed(q: SumQuery):
    """Closed-form value; a Fraction for scalars, a Mat3 for matrices."""
    return _closed(q, -q.m - q.j)


def sum_closed_printed_k(m: int, j: int, n: int) -> Fraction:
    """Scalar K sum with K_{-m+j} as the first correction term instead of K_{-m-j}.

    Kept for regression tests only; it disagrees with sum_direct.
    """
    return _closed(SumQuery("K", "scalar", m, j, n), -m + j)


def sum_direct(q: SumQuery):
    total = Mat3.zero() if q.level == "matrix" else 0
    for i in range(q.n):
        total = total + q.term(-q.m * i - q.j)
    return Fraction(total) if q.level == "scalar" else total


def sum_matrix_form(m: int, j: int, n: int) -> Mat3:
    """(T_{-mn+m-j} - T_{m-j}) (I - T_m)^{-1}."""
    if m < 1 or n < 1:
        raise ValueError(f"need m >= 1 and n >= 1, got m={m}, n={n}")
    shift = IDENTITY - t_matrix(m)
    if determinant(shift) == 0:
        raise SingularMatrix(f"I - T_{m} is singular")
    return (t_matrix(-m * n + m - j) - t_matrix(m - j)) @ adjugate_inverse(shift)


def sum_specialized(family: str, n: int) -> Fraction:
    """m=1, j=0 forms: (X_{-n+1} + X_{-n-1} + 2 X_{-n} - c) / -2, c = 1 (T) or 6 (K)."""
    if family == "T":
        X, c = tribonacci, 1
    elif family == "K":
        X, c = tribonacci_lucas, 6
    else:
        raise ValueError(f"family must be 'T' or 'K', got {family!r}")
    return Fraction(X(-n + 1) + X(-n - 1) + 2 * X(-n) - c, -2)
