from __future__ import annotations

import threading

import mpmath
import pytest

from conftest import K_TABLE, T_TABLE
from trimat import analytic
from trimat.errors import RoundingError
from trimat.exact import tribonacci, tribonacci_lucas
from trimat.matrices import IDENTITY, K0, k_matrix, t_matrix

ALPHA = "1.8392867552141611325518525646532866004241787460975922467787586394042032220819664"


def test_roots_values():
    roots = analytic.tribonacci_roots(128)
    ref = analytic._ctx(200).mpf(ALPHA)
    assert abs(roots.alpha.value - ref) < mpmath.mpf(2) ** -120
    a, b, c = roots.values()
    assert abs(a + b + c - 1) < mpmath.mpf(2) ** -120
    assert abs(a * b * c - 1) < mpmath.mpf(2) ** -120
    assert c.real == b.real and c.imag == -b.imag and b.imag > 0
    for x in (a, b, c):
        assert abs(((x - 1) * x - 1) * x - 1) < mpmath.mpf(2) ** (-128 + 8)


def test_radicals_agree():
    assert abs(analytic.alpha_from_radicals(160).value
               - analytic.tribonacci_roots(160).alpha.value) < mpmath.mpf(2) ** -150


def test_min_bits():
    with pytest.raises(ValueError):
        analytic.tribonacci_roots(32)


@pytest.mark.parametrize("n,family,expected", [
    (10, "T", 149), (0, "T", 0), (-8, "T", 4), (0, "K", 3), (7, "K", 71), (-9, "K", 23),
])
def test_binet_examples(n, family, expected):
    f = analytic.binet_t if family == "T" else analytic.binet_k
    assert abs(f(n, 192).value - expected) < 1e-20


@pytest.mark.parametrize("n", range(-12, 13))
def test_binet_tables(n):
    assert analytic.binet_rounded("T", n, 128)[0] == T_TABLE[n]
    assert analytic.binet_rounded("K", n, 128)[0] == K_TABLE[n]


def test_binet_large_negative_keeps_accuracy():
    n = -200
    assert abs(analytic.binet_k(n, 128).value - tribonacci_lucas(n)) < 1e-10
    assert abs(analytic.binet_t(n, 128).value - tribonacci(n)) < 1e-10


def test_rounded_residual_type():
    value, residual = analytic.binet_rounded("K", 5, 128)
    assert value == 21 and abs(residual.value) < 1e-20


def test_rounding_error_is_raised(monkeypatch):
    half = analytic.RealApprox(analytic._ctx(64).mpf(0.5), 64)
    monkeypatch.setattr(analytic, "binet_t", lambda n, bits: half)
    with pytest.raises(RoundingError):
        analytic.binet_rounded("T", 1, 64)


def test_coefficients_sum_to_initial_matrix():
    bits = 192
    tol = analytic.tolerance(bits)
    for family, M0 in (("T", IDENTITY), ("K", K0)):
        for direction in analytic.DIRECTIONS:
            c = analytic.binet_coefficients(family, direction, bits)
            S = c.A + c.B + c.C
            for i in range(3):
                for j in range(3):
                    assert abs(S[i, j] - M0[i, j]) < tol


def test_negative_k_coefficients_reproduce_k_minus_one():
    bits = 192
    c = analytic.binet_coefficients("K", "negative", bits)
    a, b, g = analytic.tribonacci_roots(bits + analytic.GUARD_BITS).values()
    S = c.A / a + c.B / b + c.C / g
    Km1 = k_matrix(-1)
    for i in range(3):
        for j in range(3):
            assert abs(S[i, j] - Km1[i, j]) < analytic.tolerance(bits)


@pytest.mark.parametrize("n", [-25, -3, 0, 4, 25])
def test_binet_matrix(n):
    for family, exact in (("T", t_matrix(n)), ("K", k_matrix(n))):
        approx = analytic.binet_matrix(family, n, 128)
        for i in range(3):
            for j in range(3):
                assert abs(approx[i][j].value - exact[i, j]) < 1e-10


def test_bad_family_and_direction():
    with pytest.raises(ValueError):
        analytic.binet_coefficients("X", "positive", 128)
    with pytest.raises(ValueError):
        analytic.binet_coefficients("T", "sideways", 128)
    with pytest.raises(ValueError):
        analytic.binet_rounded("X", 1, 128)


def test_ratio():
    r = analytic.consecutive_ratio(100, 128)
    assert abs(r.value - analytic.tribonacci_roots(128).alpha.value) < 1e-15
    with pytest.raises(ValueError):
        analytic.consecutive_ratio(0, 128)


def test_threads_with_different_precisions():
    results = {}

    def work(bits):
        results[bits] = analytic.binet_k(40, bits).value

    threads = [threading.Thread(target=work, args=(b,)) for b in (64, 128, 256, 512)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(abs(v - tribonacci_lucas(40)) < 1e-10 for v in results.values())
    assert mpmath.mp.prec == 53


def test_complex_str():
    roots = analytic.tribonacci_roots(64)
    assert str(roots.beta).endswith("i") and "+" in str(roots.beta)
    assert "-" in str(roots.gamma)
