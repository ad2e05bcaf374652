"""Exact values of T_n, K_n and user-defined order-k recurrences at any signed index.

Python ints are the big integers and :class:`fractions.Fraction` the exact
rationals.  Two strategies are available for the builtin sequences:

* linear iteration of the recurrence (forward for n >= 0, backward for n < 0);
* a power of the companion matrix, O(log |n|) matrix products.

:func:`tribonacci` and :func:`tribonacci_lucas` pick the matrix route once
``|n|`` exceeds :data:`MATRIX_THRESHOLD`; both routes agree exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

MATRIX_THRESHOLD = 64


@dataclass(frozen=True)
class SequenceSpec:
    """w_n = a_1 w_{n-1} + ... + a_k w_{n-k} with initial values w_0..w_{k-1}."""

    coefficients: tuple
    initials: tuple
    name: str = "w"

    def __post_init__(self):
        coefficients = tuple(int(a) for a in self.coefficients)
        initials = tuple(Fraction(w) for w in self.initials)
        if not coefficients:
            raise ValueError("order must be positive")
        if len(initials) != len(coefficients):
            raise ValueError(
                f"need {len(coefficients)} initial values, got {len(initials)}")
        if coefficients[-1] == 0:
            raise ValueError("last coefficient a_k must be nonzero "
                             "(the backward extension is undefined otherwise)")
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "initials", initials)

    @property
    def order(self) -> int:
        return len(self.coefficients)


class BuiltinSeq(enum.Enum):
    TRIB = "T"
    TRIB_LUCAS = "K"

    @property
    def spec(self) -> SequenceSpec:
        if self is BuiltinSeq.TRIB:
            return SequenceSpec((1, 1, 1), (0, 1, 1), name="T")
        return SequenceSpec((1, 1, 1), (3, 1, 3), name="K")

    @property
    def initials(self) -> tuple:
        return (0, 1, 1) if self is BuiltinSeq.TRIB else (3, 1, 3)


Seq = Union[BuiltinSeq, SequenceSpec]


def _iterate3(initials: Sequence[int], n: int) -> int:
    a, b, c = initials  # w_0, w_1, w_2
    if n >= 0:
        for _ in range(n):
            a, b, c = b, c, a + b + c
        return a
    for _ in range(-n):
        # w_{i-1} = w_{i+2} - w_{i+1} - w_i
        a, b, c = c - b - a, a, b
    return a


def tribonacci_iterative(n: int) -> int:
    return _iterate3((0, 1, 1), n)


def tribonacci_lucas_iterative(n: int) -> int:
    return _iterate3((3, 1, 3), n)


def _companion_column(n: int) -> tuple:
    # first column of T_1^n is (T_{n+1}, T_n, T_{n-1})
    from trimat.matrices import companion_power_column

    return companion_power_column(n)


def tribonacci_matrix(n: int) -> int:
    return _companion_column(n)[1]


def tribonacci_lucas_matrix(n: int) -> int:
    t_next, t, t_prev = _companion_column(n)
    return 3 * t_next - 2 * t - t_prev


def tribonacci_triple(n: int) -> tuple:
    """(T_{n+1}, T_n, T_{n-1})."""
    if abs(n) > MATRIX_THRESHOLD:
        return _companion_column(n)
    return tuple(_iterate3((0, 1, 1), i) for i in (n + 1, n, n - 1))


def tribonacci_lucas_triple(n: int) -> tuple:
    """(K_{n+1}, K_n, K_{n-1})."""
    if abs(n) > MATRIX_THRESHOLD:
        t1, t0, tm1 = _companion_column(n)
        t2 = t1 + t0 + tm1
        tm2 = t1 - t0 - tm1
        return (3 * t2 - 2 * t1 - t0,
                3 * t1 - 2 * t0 - tm1,
                3 * t0 - 2 * tm1 - tm2)
    return tuple(_iterate3((3, 1, 3), i) for i in (n + 1, n, n - 1))


def tribonacci(n: int) -> int:
    """T_n for any integer n (T_0=0, T_1=1, T_2=1)."""
    if abs(n) > MATRIX_THRESHOLD:
        return tribonacci_matrix(n)
    return tribonacci_iterative(n)


def tribonacci_lucas(n: int) -> int:
    """K_n for any integer n (K_0=3, K_1=1, K_2=3)."""
    if abs(n) > MATRIX_THRESHOLD:
        return tribonacci_lucas_matrix(n)
    return tribonacci_lucas_iterative(n)


def _step_back(spec: SequenceSpec, window: list) -> Fraction:
    # window holds w_{i}, ..., w_{i+k-1}; returns w_{i-1}
    a = spec.coefficients
    k = len(a)
    acc = Fraction(window[k - 1])
    for idx in range(1, k):
        acc -= a[idx - 1] * window[k - 1 - idx]
    return acc / a[k - 1]


def _step_forward(spec: SequenceSpec, window: list) -> Fraction:
    a = spec.coefficients
    k = len(a)
    return sum((a[idx] * window[k - 1 - idx] for idx in range(k)), Fraction(0))


def eval_sequence(spec: SequenceSpec, n: int) -> Fraction:
    """Exact w_n, stepping backward through the recurrence when n < 0."""
    k = spec.order
    window = list(spec.initials)
    if 0 <= n < k:
        return window[n]
    if n >= k:
        for _ in range(n - k + 1):
            window = window[1:] + [_step_forward(spec, window)]
        return window[-1]
    for _ in range(-n):
        window = [_step_back(spec, window)] + window[:-1]
    return window[0]


def sequence_slice(seq: Seq, lo: int, hi: int) -> list:
    """Values at lo..hi inclusive from one linear pass.

    Builtin sequences yield ints, generic specs yield Fractions.
    """
    if lo > hi:
        raise ValueError(f"empty range: lo={lo} > hi={hi}")
    builtin = isinstance(seq, BuiltinSeq)
    spec = seq.spec if builtin else seq
    start = min(lo, 0)
    window = list(seq.initials) if builtin else list(spec.initials)
    for _ in range(-start):
        window = [_step_back(spec, window)] + window[:-1]

    out = []
    index = start
    # window[0] is w_index
    while index <= hi:
        if index >= lo:
            out.append(window[0])
        window = window[1:] + [_step_forward(spec, window)]
        index += 1
    if builtin:
        out = [int(v) for v in out]
    return out
