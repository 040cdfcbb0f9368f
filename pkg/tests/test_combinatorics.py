from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from betaquantile.combinatorics import (
    bell_by_partitions,
    bernoulli_number,
    bernoulli_polynomial,
    check_norlund_bell_identity,
    complete_bell,
    identity_sides,
    integer_partitions,
    norlund_at_one_minus_b,
    norlund_polynomial,
    pochhammer,
)
from betaquantile.exactmath import Poly


def _series_inverse(coeffs, n):
    """First n+1 coefficients of 1/f for a power series f with f[0] != 0."""
    inv = [Fraction(1) / coeffs[0]]
    for m in range(1, n + 1):
        s = sum(coeffs[k] * inv[m - k] for k in range(1, m + 1) if k < len(coeffs))
        inv.append(-s / coeffs[0])
    return inv


def _series_mul(f, g, n):
    return [sum(f[k] * g[m - k] for k in range(m + 1)) for m in range(n + 1)]


def test_bernoulli_matches_series_inversion():
    # x / (e^x - 1) = 1 / sum_k x^k / (k+1)!
    n = 20
    inv = _series_inverse([Fraction(1, factorial(k + 1)) for k in range(n + 1)], n)
    for k in range(n + 1):
        assert bernoulli_number(k) == inv[k] * factorial(k)


def test_bernoulli_known_values():
    assert bernoulli_number(1) == Fraction(-1, 2)
    assert bernoulli_number(2) == Fraction(1, 6)
    assert bernoulli_number(12) == Fraction(-691, 2730)
    assert bernoulli_number(15) == 0
    with pytest.raises(ValueError):
        bernoulli_number(-1)


def test_bernoulli_polynomials_match_generating_function():
    # x e^{tx} / (e^x - 1): coefficient of x^n is sum_k B_k/k! t^(n-k)/(n-k)!
    for n in range(9):
        expected = [Fraction(0)] * (n + 1)
        for k in range(n + 1):
            expected[n - k] = bernoulli_number(k) / factorial(k) / factorial(n - k) * factorial(n)
        assert bernoulli_polynomial(n) == Poly(expected)
    assert bernoulli_polynomial(2) == Poly([Fraction(1, 6), -1, 1])
    # B_n(1) = B_n except at n = 1
    for n in range(2, 12):
        assert bernoulli_polynomial(n)(1) == bernoulli_number(n)


def test_partitions_counts():
    assert [sum(1 for _ in integer_partitions(n)) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]


@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=6), min_size=1, max_size=8))
def test_bell_recurrence_matches_partition_sum(xs):
    assert complete_bell(len(xs), xs) == bell_by_partitions(len(xs), xs)


def test_bell_examples_and_arity():
    assert complete_bell(0, []) == 1
    assert complete_bell(3, [1, 1, 1]) == 5
    assert complete_bell(4, [1, 1, 1, 1]) == 15
    x = Poly([0, 1])
    assert complete_bell(2, [x, 3]) == Poly([3, 0, 1])
    with pytest.raises(ValueError):
        complete_bell(3, [1, 2])


def test_bell_is_exponential_of_series():
    # exp(sum x_k t^k / k!) = sum Bell_n t^n / n!, checked by the log-derivative
    xs = [Fraction(1, 3), Fraction(-2), Fraction(5, 7), Fraction(1, 2), Fraction(-1, 5)]
    n = len(xs)
    e = [Fraction(complete_bell(m, xs[:m])) / factorial(m) for m in range(n + 1)]
    f_prime = [xs[k] / factorial(k) for k in range(n)]
    e_prime = [e[m + 1] * (m + 1) for m in range(n)]
    assert e_prime == _series_mul(f_prime, e, n - 1)


def _norlund_miller(c, n):
    # (x / (e^x - 1))^c by the J.C.P. Miller power recurrence
    f = [Fraction(1, factorial(k + 1)) for k in range(n + 1)]
    g = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum((c * k - (m - k)) * f[k] * g[m - k] for k in range(1, m + 1))
        g.append(s / m)
    # g are coefficients of (f)^(-c) where f = (e^x - 1)/x
    return [g[k] * factorial(k) for k in range(n + 1)]


def test_norlund_matches_power_recurrence():
    for c in (Fraction(1), Fraction(2), Fraction(-3, 2), Fraction(5, 3)):
        expected = _norlund_miller(-c, 10)
        for n in range(11):
            assert norlund_polynomial(n)(c) == expected[n]


def test_norlund_matches_convolution_powers():
    n = 9
    base = [bernoulli_number(k) / factorial(k) for k in range(n + 1)]
    power = [Fraction(1)] + [Fraction(0)] * n
    for c in (1, 2, 3):
        power = _series_mul(power, base, n)
        for k in range(n + 1):
            assert norlund_polynomial(k)(c) == power[k] * factorial(k)


def test_norlund_leading_coefficient_and_special_values():
    for n in range(1, 12):
        poly = norlund_polynomial(n)
        assert poly.degree == n
        assert poly.coeffs[-1] == Fraction(-1, 2) ** n
        assert poly(1) == bernoulli_number(n)
        assert poly(0) == 0
    assert norlund_polynomial(0) == Poly([1])
    assert norlund_at_one_minus_b(1) == Poly([0, Fraction(1, 2)], "b") + Fraction(-1, 2)


def test_pochhammer_examples():
    assert pochhammer(3, 0) == 1
    assert pochhammer(3, 4) == 3 * 4 * 5 * 6
    assert pochhammer(Fraction(1, 2), 2) == Fraction(3, 4)
    assert pochhammer(-2, 3) == 0
    assert pochhammer(Poly([0, 1]), 2) == Poly([0, 1, 1])
    with pytest.raises(ValueError):
        pochhammer(1, -1)


def test_identity_report_all_pass():
    report = check_norlund_bell_identity(10)
    assert [r.n for r in report] == list(range(1, 11))
    assert all(r.passed for r in report)
    with pytest.raises(ValueError):
        check_norlund_bell_identity(0)


def test_ratio_identity_first_term():
    lhs, rhs = identity_sides(1)["ratio_form"]
    assert lhs == rhs == Poly([0, Fraction(-1, 2), Fraction(1, 2)], "b")


def test_unweighted_ratio_arguments_fail():
    # without the (j-1)!/(j+1) weight the Bell form is off already at n = 1
    for n in range(1, 6):
        lhs, _ = identity_sides(n)["ratio_form"]
        args = [bernoulli_polynomial(j + 1, "b") - bernoulli_number(j + 1) for j in range(1, n + 1)]
        assert lhs != complete_bell(n, args)


def test_reflected_identity_sign_parses_agree():
    for n in range(1, 9):
        sides = identity_sides(n)
        assert sides["reflected_outer"][1] == sides["reflected_grouped"][1]
