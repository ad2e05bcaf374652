from __future__ import annotations

import warnings
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from trimat.exact import tribonacci, tribonacci_lucas
from trimat.sums import (
    SumQuery, sum_closed, sum_closed_printed_k, sum_direct, sum_matrix_form, sum_specialized,
)


def test_examples():
    assert sum_closed(SumQuery("T", "scalar", 1, 0, 1)) == 0
    assert sum_closed(SumQuery("T", "scalar", 1, 0, 3)) == 1
    assert sum_closed(SumQuery("K", "scalar", 2, 1, 2)) == tribonacci_lucas(-1) + tribonacci_lucas(-3)


@given(st.sampled_from("TK"), st.sampled_from(["scalar", "matrix"]),
       st.integers(1, 6), st.integers(0, 5), st.integers(1, 25))
def test_closed_equals_direct(family, level, m, j, n):
    j = j % m
    q = SumQuery(family, level, m, j, n)
    assert sum_closed(q) == sum_direct(q)


@given(st.integers(1, 5), st.integers(0, 4), st.integers(1, 20))
def test_matrix_form(m, j, n):
    j = j % m
    assert sum_matrix_form(m, j, n) == sum_direct(SumQuery("T", "matrix", m, j, n))


@pytest.mark.parametrize("n", range(1, 30))
def test_specialized(n):
    assert sum_specialized("T", n) == sum(tribonacci(-i) for i in range(n))
    assert sum_specialized("K", n) == sum(tribonacci_lucas(-i) for i in range(n))


def test_printed_k_variant_disagrees():
    q = SumQuery("K", "scalar", 2, 1, 3)
    assert sum_closed(q) == sum_direct(q)
    assert sum_closed_printed_k(2, 1, 3) != sum_direct(q)
    # with j = 0 the two variants coincide
    assert sum_closed_printed_k(3, 0, 5) == sum_direct(SumQuery("K", "scalar", 3, 0, 5))


def test_validation():
    for bad in [("X", "scalar", 1, 0, 1), ("T", "vector", 1, 0, 1), ("T", "scalar", 0, 0, 1),
                ("T", "scalar", 1, 0, 0), ("T", "scalar", 1, -1, 1)]:
        with pytest.raises(ValueError):
            SumQuery(*bad)
    with pytest.raises(ValueError):
        sum_specialized("X", 3)


def test_offset_beyond_stride_warns():
    with pytest.warns(UserWarning):
        q = SumQuery("T", "scalar", 2, 3, 4)
    assert isinstance(sum_closed(q), Fraction)


def test_in_range_does_not_warn():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        SumQuery("T", "scalar", 2, 1, 4)
