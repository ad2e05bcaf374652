"""Maclaurin coefficients of rational generating functions, scalar and 3x3."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from trimat.matrices import Mat3


def _trim(poly) -> tuple:
    coeffs = list(poly)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class RationalGF:
    """numerator(x) / denominator(x); polynomials are ascending coefficient lists."""

    numerator: tuple
    denominator: tuple

    def __post_init__(self):
        num = _trim(self.numerator) or (0,)
        den = _trim(self.denominator)
        if not den or den[0] == 0:
            raise ValueError("denominator must have a nonzero constant term")
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    def __str__(self):
        return f"({format_poly(self.numerator)})/({format_poly(self.denominator)})"


@dataclass(frozen=True)
class MatrixGF:
    """3x3 numerator polynomials over one shared denominator."""

    numerators: tuple
    denominator: tuple

    def __post_init__(self):
        nums = tuple(tuple(_trim(p) for p in row) for row in self.numerators)
        if len(nums) != 3 or any(len(row) != 3 for row in nums):
            raise ValueError("MatrixGF needs a 3x3 grid of numerators")
        den = _trim(self.denominator)
        if not den or den[0] == 0:
            raise ValueError("denominator must have a nonzero constant term")
        object.__setattr__(self, "numerators", nums)
        object.__setattr__(self, "denominator", den)

    def entry(self, i: int, j: int) -> RationalGF:
        return RationalGF(self.numerators[i][j], self.denominator)


def format_poly(coeffs, var: str = "x") -> str:
    terms = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            power = var if k == 1 else f"{var}^{k}"
            body = power if mag == 1 else f"{mag}{power}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def gf_coefficients(gf: RationalGF, count: int) -> list:
    """First ``count`` coefficients, c_n = (p_n - sum_{i>=1} q_i c_{n-i}) / q_0."""
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    p, q = gf.numerator, gf.denominator
    if q[0] == 0:
        raise ValueError("denominator must have a nonzero constant term")
    q0 = Fraction(q[0])
    out = []
    for n in range(count):
        acc = Fraction(p[n]) if n < len(p) else Fraction(0)
        for i in range(1, min(n, len(q) - 1) + 1):
            acc -= q[i] * out[n - i]
        out.append(acc / q0)
    return out


class GFKind(enum.Enum):
    T_POS = "T_POS"
    K_POS = "K_POS"
    T_NEG = "T_NEG"
    K_NEG = "K_NEG"
    TMAT_NEG = "TMAT_NEG"
    KMAT_NEG = "KMAT_NEG"


POS_DENOMINATOR = (1, -1, -1, -1)   # 1 - x - x^2 - x^3
NEG_DENOMINATOR = (1, 1, 1, -1)     # 1 + x + x^2 - x^3

_TMAT_NEG = (
    ((1, 1, 1), (0, 1, 1), (0, 0, 1)),
    ((0, 0, 1), (1, 1), (0, 1)),
    ((0, 1), (0, -1, 1), (1,)),
)
_KMAT_NEG = (
    ((1, 4, 3), (2, 0, 4), (3, 2, 1)),
    ((3, 2, 1), (-2, 2, 2), (-1, -2, 3)),
    ((-1, -2, 3), (4, 4, -2), (-1, 4, -1)),
)

_BUILTINS = {
    GFKind.T_POS: RationalGF((0, 1), POS_DENOMINATOR),
    GFKind.K_POS: RationalGF((3, -2, -1), POS_DENOMINATOR),
    GFKind.T_NEG: RationalGF((0, 0, 1), NEG_DENOMINATOR),
    GFKind.K_NEG: RationalGF((3, 2, 1), NEG_DENOMINATOR),
    GFKind.TMAT_NEG: MatrixGF(_TMAT_NEG, NEG_DENOMINATOR),
    GFKind.KMAT_NEG: MatrixGF(_KMAT_NEG, NEG_DENOMINATOR),
}


def builtin_gf(kind) -> RationalGF | MatrixGF:
    """The closed-form generating function for ``kind`` (a GFKind or its name)."""
    return _BUILTINS[GFKind(kind)]


def matrix_gf_coefficients(kind, count: int) -> list:
    """Coefficient matrices 0..count-1 of TMAT_NEG or KMAT_NEG."""
    kind = GFKind(kind)
    gf = builtin_gf(kind)
    if not isinstance(gf, MatrixGF):
        raise ValueError(f"{kind.value} is a scalar generating function")
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    columns = [[gf_coefficients(gf.entry(i, j), count) for j in range(3)] for i in range(3)]
    return [Mat3([[columns[i][j][n] for j in range(3)] for i in range(3)])
            for n in range(count)]
