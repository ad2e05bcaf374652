"""Binet-form evaluation from the roots of x^3 - x^2 - x - 1.

Everything here is approximate and precision-tagged.  Each precision gets
its own mpmath context, created once and never mutated, so nothing touches
the global ``mpmath.mp`` state.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import mpmath

from trimat.errors import RoundingError, ZeroDenominator
from trimat.exact import tribonacci
from trimat.matrices import k_matrix, t_matrix

MIN_BITS = 64
# Working precision is bits + |n| + GUARD_BITS: log2(alpha) < 1, so |n| extra
# bits cover the growth of every root power.
GUARD_BITS = 32
ROUNDING_LIMIT = 1e-6

FAMILIES = ("T", "K")
DIRECTIONS = ("positive", "negative")


@functools.lru_cache(maxsize=None)
def _ctx(bits: int) -> mpmath.MPContext:
    ctx = mpmath.MPContext()
    ctx.prec = bits
    return ctx


def _check_bits(bits: int) -> None:
    if bits < MIN_BITS:
        raise ValueError(f"precision_bits must be >= {MIN_BITS}, got {bits}")


def tolerance(bits: int):
    """Default closeness threshold 2**(-bits/2)."""
    return _ctx(max(bits, MIN_BITS)).ldexp(1, -(bits // 2))


@dataclass(frozen=True)
class RealApprox:
    value: mpmath.mpf
    precision_bits: int

    def __float__(self):
        return float(self.value)

    def __str__(self):
        return _ctx(self.precision_bits).nstr(self.value, int(self.precision_bits * 0.30103))


@dataclass(frozen=True)
class ComplexApprox:
    re: RealApprox
    im: RealApprox

    def __post_init__(self):
        if self.re.precision_bits != self.im.precision_bits:
            raise ValueError("real and imaginary precisions differ")

    @property
    def precision_bits(self) -> int:
        return self.re.precision_bits

    @property
    def value(self) -> mpmath.mpc:
        return _ctx(self.precision_bits).mpc(self.re.value, self.im.value)

    def conjugate(self) -> "ComplexApprox":
        return ComplexApprox(self.re, RealApprox(-self.im.value, self.im.precision_bits))

    def __str__(self):
        sign = "-" if self.im.value < 0 else "+"
        im = RealApprox(abs(self.im.value), self.im.precision_bits)
        return f"{self.re} {sign} {im}i"


def _complex(z, bits: int) -> ComplexApprox:
    ctx = _ctx(bits)
    return ComplexApprox(RealApprox(ctx.mpf(z.real), bits), RealApprox(ctx.mpf(z.imag), bits))


@dataclass(frozen=True)
class CubicRoots:
    alpha: RealApprox
    beta: ComplexApprox
    gamma: ComplexApprox
    precision_bits: int

    def values(self, bits: int | None = None) -> tuple:
        """(alpha, beta, gamma) as mpmath numbers in the context for ``bits``."""
        ctx = _ctx(bits or self.precision_bits)
        return (ctx.mpf(self.alpha.value),
                ctx.mpc(self.beta.value),
                ctx.mpc(self.gamma.value))


def _cubic(x):
    return ((x - 1) * x - 1) * x - 1


def _real_root(ctx) -> mpmath.mpf:
    lo, hi = ctx.mpf(1), ctx.mpf(2)
    # f(1) = -2 < 0 < f(2) = 1
    for _ in range(24):
        mid = (lo + hi) / 2
        if _cubic(mid) < 0:
            lo = mid
        else:
            hi = mid
    x = (lo + hi) / 2
    eps = ctx.ldexp(1, -ctx.prec + 2)
    for _ in range(2 * ctx.prec.bit_length() + 8):
        step = _cubic(x) / ((3 * x - 2) * x - 1)
        x -= step
        if abs(step) <= eps:
            break
    return x


@functools.lru_cache(maxsize=64)
def tribonacci_roots(precision_bits: int) -> CubicRoots:
    """Roots of x^3 - x^2 - x - 1: alpha by bisection then Newton on [1, 2],
    beta and gamma from x^2 - (1 - alpha) x + 1/alpha.

    beta is the root with positive imaginary part.
    """
    _check_bits(precision_bits)
    ctx = _ctx(precision_bits + GUARD_BITS)
    alpha = _real_root(ctx)
    s = 1 - alpha
    disc = 4 / alpha - s * s
    beta = ctx.mpc(s / 2, ctx.sqrt(disc) / 2)
    bits = precision_bits
    out = _ctx(bits)
    return CubicRoots(
        alpha=RealApprox(out.mpf(alpha), bits),
        beta=_complex(beta, bits),
        gamma=_complex(ctx.conj(beta), bits),
        precision_bits=bits,
    )


def alpha_from_radicals(precision_bits: int) -> RealApprox:
    """(1 + cbrt(19 + 3 sqrt 33) + cbrt(19 - 3 sqrt 33)) / 3, for cross-checking."""
    ctx = _ctx(precision_bits + GUARD_BITS)
    r = 3 * ctx.sqrt(33)
    value = (1 + ctx.cbrt(19 + r) + ctx.cbrt(19 - r)) / 3
    return RealApprox(_ctx(precision_bits).mpf(value), precision_bits)


def _working_roots(n: int, bits: int):
    work = bits + abs(n) + GUARD_BITS
    return _ctx(work), tribonacci_roots(work).values()


def _finish_real(z, n: int, bits: int) -> RealApprox:
    ctx = _ctx(bits)
    if abs(z.imag) >= tolerance(bits):
        raise ArithmeticError(
            f"imaginary residue {ctx.nstr(z.imag, 5)} at n={n} exceeds 2^-{bits // 2}")
    return RealApprox(ctx.mpf(z.real), bits)


def binet_t(n: int, precision_bits: int) -> RealApprox:
    """T_n from the three-term Binet sum."""
    _check_bits(precision_bits)
    ctx, (a, b, c) = _working_roots(n, precision_bits)
    z = (a ** (n + 1) / ((a - b) * (a - c))
         + b ** (n + 1) / ((b - a) * (b - c))
         + c ** (n + 1) / ((c - a) * (c - b)))
    return _finish_real(ctx.mpc(z), n, precision_bits)


def binet_k(n: int, precision_bits: int) -> RealApprox:
    """K_n = alpha^n + beta^n + gamma^n."""
    _check_bits(precision_bits)
    ctx, (a, b, c) = _working_roots(n, precision_bits)
    z = a ** n + b ** n + c ** n
    return _finish_real(ctx.mpc(z), n, precision_bits)


def binet_rounded(family: str, n: int, precision_bits: int) -> tuple:
    """Nearest integer to the Binet value and the residual.

    Raises RoundingError if the residual exceeds ROUNDING_LIMIT.
    """
    approx = _binet_scalar(family)(n, precision_bits)
    ctx = _ctx(precision_bits)
    nearest = int(ctx.nint(approx.value))
    residual = approx.value - nearest
    if abs(residual) > ROUNDING_LIMIT:
        raise RoundingError(
            f"{family}_{n}: Binet value {approx} is {ctx.nstr(residual, 5)} from {nearest}")
    return nearest, RealApprox(residual, precision_bits)


def _binet_scalar(family: str):
    if family == "T":
        return binet_t
    if family == "K":
        return binet_k
    raise ValueError(f"family must be 'T' or 'K', got {family!r}")


@dataclass(frozen=True)
class BinetCoeffs:
    """Coefficient matrices with M_n = A alpha^n + B beta^n + C gamma^n.

    A, B, C are mpmath complex matrices.
    """

    A: mpmath.matrix
    B: mpmath.matrix
    C: mpmath.matrix
    family: str
    direction: str
    precision_bits: int

    def as_tuple(self) -> tuple:
        return (self.A, self.B, self.C)

    def entry(self, which: str, i: int, j: int) -> ComplexApprox:
        return _complex(getattr(self, which)[i, j], self.precision_bits)


def _exact_to_mp(ctx, M):
    return ctx.matrix([[ctx.mpf(x) for x in row] for row in M.rows])


def _family_matrix(family: str):
    if family == "T":
        return t_matrix
    if family == "K":
        return k_matrix
    raise ValueError(f"family must be 'T' or 'K', got {family!r}")


def binet_coefficients(family: str, direction: str, precision_bits: int) -> BinetCoeffs:
    """A, B, C from the closed forms in the initial matrices.

    positive: (r M_2 + r(r-1) M_1 + M_0) / (r (r-s)(r-t))
    negative: (r M_{-2} + (r-1) r^2 M_{-1} + r^2 M_0) / ((r-s)(r-t))
    where r is the root the coefficient belongs to and s, t are the others.
    """
    _check_bits(precision_bits)
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}, got {direction!r}")
    mat = _family_matrix(family)
    work = precision_bits + GUARD_BITS
    ctx = _ctx(work)
    roots = tribonacci_roots(work).values()
    if direction == "positive":
        M0, M1, M2 = (_exact_to_mp(ctx, mat(i)) for i in (0, 1, 2))
    else:
        M0, M1, M2 = (_exact_to_mp(ctx, mat(i)) for i in (0, -1, -2))

    out = []
    for k, r in enumerate(roots):
        s, t = (roots[i] for i in range(3) if i != k)
        if direction == "positive":
            num = M2 * r + M1 * (r * (r - 1)) + M0
            den = r * (r - s) * (r - t)
        else:
            num = M2 * r + M1 * ((r - 1) * r * r) + M0 * (r * r)
            den = (r - s) * (r - t)
        out.append(num * (1 / den))
    return BinetCoeffs(*out, family=family, direction=direction,
                       precision_bits=precision_bits)


def binet_matrix(family: str, n: int, precision_bits: int) -> tuple:
    """Real parts of A r^n + B s^n + C t^n, as 3 rows of RealApprox.

    Works at max(precision_bits, 128 + 2|n|) bits so the result tracks the
    exact matrix for large |n| as well.
    """
    bits = max(precision_bits, 128 + 2 * abs(n))
    direction = "positive" if n >= 0 else "negative"
    coeffs = binet_coefficients(family, direction, bits)
    ctx = _ctx(bits + GUARD_BITS)
    a, b, c = tribonacci_roots(bits + GUARD_BITS).values()
    M = coeffs.A * a ** n + coeffs.B * b ** n + coeffs.C * c ** n
    out = _ctx(bits)
    return tuple(tuple(RealApprox(out.mpf(ctx.re(M[i, j])), bits) for j in range(3))
                 for i in range(3))


def consecutive_ratio(n: int, precision_bits: int) -> RealApprox:
    """T_{n+1} / T_n from exact values."""
    _check_bits(precision_bits)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    denom = tribonacci(n)
    if denom == 0:
        raise ZeroDenominator(f"T_{n} = 0")
    ctx = _ctx(precision_bits)
    return RealApprox(ctx.mpf(tribonacci(n + 1)) / denom, precision_bits)
