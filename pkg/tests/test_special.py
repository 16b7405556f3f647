import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special as sp

from qohhg.exceptions import LaguerreOverflowError
from qohhg.special import (bessel_j, bessel_j_complex, bessel_j_quadrature, bessel_j_recurrence,
                           laguerre_assoc, laguerre_generating_check, laguerre_log,
                           laguerre_sequence, laurent_coefficient, log_factorial_ratio)


def laguerre_exact(n, m, x):
    """sum_k binom(n+m, n-k) (-x)^k / k! in exact rationals."""
    x = Fraction(x)
    return sum(Fraction(math.comb(n + m, n - k)) * (-x) ** k / math.factorial(k)
               for k in range(n + 1))


def test_laguerre_trivial():
    assert laguerre_assoc(0, 3, 1.7) == 1.0
    assert laguerre_assoc(2, 0, 1.0) == -0.5


def test_laguerre_5_2():
    exact = laguerre_exact(5, 2, Fraction(8, 10))
    assert abs(laguerre_assoc(5, 2, 0.8) - float(exact)) < 1e-12 * abs(float(exact))


@pytest.mark.parametrize("x", [Fraction(1, 10), Fraction(1), Fraction(5)])
def test_laguerre_vs_direct_sum(x):
    for n in range(21):
        for m in range(11):
            ref = float(laguerre_exact(n, m, x))
            got = laguerre_assoc(n, m, float(x))
            assert abs(got - ref) <= 1e-12 * max(abs(ref), 1.0), (n, m, x)


def test_laguerre_vs_scipy_large():
    for n, m, x in [(400, 3, 50.0), (1000, 0, 10.0), (300, 5, 150.0)]:
        s, lg = laguerre_log(n, m, x)
        ref = sp.eval_genlaguerre(n, m, x)
        assert abs(s * math.exp(lg) - ref) <= 1e-9 * abs(ref)


def test_laguerre_log_vs_mpmath_huge():
    # far beyond double range; compare sign and log-magnitude
    for n, m, x in [(2000, 5, 1500.0), (10000, 0, 9000.0)]:
        s, lg = laguerre_log(n, m, x)
        ref = mpmath.laguerre(n, m, x)
        assert s == (1.0 if ref > 0 else -1.0)
        assert abs(lg - float(mpmath.log(abs(ref)))) <= 1e-9 * abs(lg)


def test_laguerre_overflow_guard():
    with pytest.raises(LaguerreOverflowError):
        laguerre_sequence(10000, 0, 9000.0)
    s, lg = laguerre_log(10000, 0, 9000.0)
    assert math.isfinite(lg) and s in (-1.0, 1.0)


def test_log_factorial_ratio():
    assert log_factorial_ratio(5, 5) == 0.0
    assert abs(log_factorial_ratio(3, 0) - math.log(6)) < 1e-15
    assert abs(log_factorial_ratio(100, 98) - math.log(9900)) < 1e-13
    assert abs(log_factorial_ratio(0, 3) + math.log(6)) < 1e-15


def test_bessel_trivial():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(1, 0.0) == 0.0


def test_bessel_parseval():
    s = sum(bessel_j(m, 2.5) ** 2 for m in range(-40, 41))
    assert abs(s - 1) < 1e-12


@pytest.mark.parametrize("z", [0.3, 1.0, 7.5, 20.0, 50.0])
def test_bessel_two_paths_agree(z):
    for m in range(-60, 61):
        a, b = bessel_j_recurrence(m, z), bessel_j_quadrature(m, z)
        ref = sp.jv(m, z)
        assert abs(a - b) <= 1e-12 * max(abs(a), 1e-280) + 1e-300, (m, z)
        assert abs(a - ref) <= 1e-11 * abs(ref) + 1e-300, (m, z)


def test_bessel_large_argument():
    for m in (0, 7, 60):
        assert abs(bessel_j(m, 1e4) - sp.jv(m, 1e4)) < 1e-12
        assert abs(bessel_j(m, 1e4, method="quadrature") - sp.jv(m, 1e4)) < 1e-11


def test_bessel_negative_argument_and_order():
    assert abs(bessel_j(-3, 2.0) + sp.jv(3, 2.0)) < 1e-15
    assert abs(bessel_j(3, -2.0) + sp.jv(3, 2.0)) < 1e-15


def test_bessel_unknown_method():
    with pytest.raises(ValueError):
        bessel_j(0, 1.0, method="series")


def test_bessel_complex():
    for m, z in [(0, 1 + 1j), (3, 2 - 0.5j), (-4, 0.3j)]:
        assert abs(bessel_j_complex(m, z) - sp.jv(m, z)) < 1e-13 * max(1, abs(sp.jv(m, z)))


def test_laurent_unit_circle_matches_saddle():
    for k, u, v in [(2, 0.3, 0.4), (-3, 1.1j, 0.2 + 0.1j)]:
        a = laurent_coefficient(k, u, v, radius=1.0)
        b = laurent_coefficient(k, u, v)
        assert abs(a - b) < 1e-14


def test_generating_examples():
    lhs, rhs = laguerre_generating_check(0, 0.0, 1.0)
    assert abs(lhs - math.e) < 1e-15 and abs(rhs - math.e) < 1e-14
    lhs, rhs = laguerre_generating_check(1, 0.5, 0.8)
    assert abs(lhs - rhs) < 1e-12
    lhs, rhs = laguerre_generating_check(3, 2.0, 1.5)
    assert abs(lhs - rhs) < 1e-11


def test_generating_grid():
    for m in (0, 2, 5):
        for x in (0.1, 1.0, 3.0):
            for z in (0.5, -1.2, 2.0 + 1.0j):
                lhs, rhs = laguerre_generating_check(m, x, z)
                assert abs(lhs - rhs) < 1e-11, (m, x, z)


@settings(max_examples=40, deadline=None)
@given(st.integers(-30, 30), st.floats(0.0, 40.0, allow_nan=False))
def test_bessel_paths_property(m, z):
    a, b = bessel_j_recurrence(m, z), bessel_j_quadrature(m, z)
    assert abs(a - b) <= 1e-12 * max(abs(a), 1e-200) + 1e-200
