import math
import time
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from betaquantile.combinatorics import complete_bell
from betaquantile.exactmath import BiPoly
from betaquantile.expansion_inf import (
    DeltaTable,
    delta,
    exp_of_series,
    gamma_ratio_approx,
    gamma_ratio_coefficients,
    phi_approx_inf,
    phi_coefficient,
    phi_series_inf,
    q_approx_inf,
    q_coefficients_inf,
)
from betaquantile.special import QuantileQuery, beta_quantile_oracle, log_gamma_ratio, phi_oracle

B = BiPoly.b()
G = BiPoly.gamma()

GOLDEN = {
    0: G,
    1: G * (B - 1) * Fraction(1, 2),
    2: G * (B - 1) * (B * 7 + G - 5) * Fraction(1, 12),
    3: G * (B - 1) ** 2 * (B * 3 + G - 1) * Fraction(3, 8),
}


@pytest.mark.parametrize("n", sorted(GOLDEN))
def test_golden_coefficients(n):
    assert phi_coefficient(n).poly == GOLDEN[n]


def test_fresh_table_agrees_with_shared_one():
    table = DeltaTable()
    for n in range(6):
        assert phi_coefficient(n, table).poly == phi_coefficient(n).poly


def test_b_one_annihilates_corrections():
    for n in range(1, 9):
        assert phi_coefficient(n).poly.substitute_b(1).is_zero()


def test_delta_examples():
    table = DeltaTable()
    assert delta(0, 0, 0, table) == BiPoly.constant(1)
    assert delta(1, 0, 0, table) == BiPoly.constant(-1) + (B - 1) * BiPoly.gamma(-1)
    # delta(0, 0, n) = B_n^(1-b) gamma^n
    assert delta(0, 0, 1, table) == B * G * Fraction(1, 2) - G * Fraction(1, 2)
    with pytest.raises(ValueError):
        delta(0, 3, 0, table)
    with pytest.raises(ValueError):
        delta(-1, 0, 0, table)


def test_phi_coefficient_is_fast():
    start = time.perf_counter()
    phi_coefficient(10, DeltaTable())
    assert time.perf_counter() - start < 10.0


def test_series_values_b_one():
    series = phi_series_inf(1.0, 0.25, 6)
    assert series.gamma_b == pytest.approx(-math.log(0.25), rel=1e-14)
    assert all(abs(c) <= 1e-15 for c in series.coeffs[1:])


@pytest.mark.parametrize("b,p", [(2.0, 0.5), (3.5, 0.25)])
@pytest.mark.parametrize("order", [1, 2, 3])
def test_phi_error_law(b, p, order):
    series = phi_series_inf(b, p, order)

    def err(a):
        return abs(phi_approx_inf(series, a) - phi_oracle(a, b, p))

    ratios = [err(2 * a) / err(a) for a in (25.0, 50.0, 100.0)]
    assert all(2.0 ** -(order + 2) <= r <= 2.0**-order for r in ratios), ratios


@pytest.mark.parametrize("b,p", [(2.0, 0.5), (0.6, 0.7), (5.0, 0.1)])
def test_q_series_error_law(b, p):
    order = 3
    series = phi_series_inf(b, p, order)

    def err(a):
        return abs(q_approx_inf(series, a) - beta_quantile_oracle(QuantileQuery(a, b, p)))

    ratios = [err(2 * a) / err(a) for a in (50.0, 100.0, 200.0)]
    assert all(2.0 ** -(order + 2) <= r <= 2.0**-order for r in ratios), ratios


def test_q_coefficients_lead():
    series = phi_series_inf(2.0, 0.5, 4)
    coeffs = q_coefficients_inf(series)
    assert len(coeffs) == 5
    assert coeffs[0] == 1.0
    assert coeffs[1] == pytest.approx(-series.gamma_b, rel=1e-15)


def test_exp_of_series_examples():
    assert exp_of_series([]) == []
    assert exp_of_series([0.0, 1.0, 0.0, 0.0]) == pytest.approx([1.0, 1.0, 0.5, 1 / 6])
    out = exp_of_series([math.log(2.0), 0.0, 2.0])
    assert out == pytest.approx([2.0, 0.0, 2.0])


@settings(max_examples=40)
@given(st.lists(st.floats(-2.0, 2.0), min_size=2, max_size=7))
def test_exp_of_series_satisfies_log_derivative(xs):
    # E' = F' E for E = exp(F), with F = sum xs[k] t^k / k!
    e = exp_of_series(xs)
    n = len(xs) - 1
    f = [x / math.factorial(k) for k, x in enumerate(xs)]
    for m in range(n):
        lhs = (m + 1) * e[m + 1]
        rhs = sum((k + 1) * f[k + 1] * e[m - k] for k in range(m + 1))
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))
    # Bell form of the same coefficients
    for k in range(1, n + 1):
        bell = complete_bell(k, xs[1 : k + 1]) / math.factorial(k)
        assert e[k] == pytest.approx(math.exp(xs[0]) * bell, rel=1e-12, abs=1e-12)


def test_gamma_ratio_coefficients_integer_b():
    # Gamma(a) a^2 / Gamma(a + 2) = a / (a + 1) = sum (-1)^n a^-n
    assert gamma_ratio_coefficients(2, 6) == pytest.approx([(-1) ** n for n in range(7)])
    assert gamma_ratio_coefficients(1, 5) == pytest.approx([1, 0, 0, 0, 0, 0])


@pytest.mark.parametrize("b", [0.5, 2.5, 7.0])
def test_gamma_ratio_error_law(b):
    order = 4

    def err(a):
        return abs(gamma_ratio_approx(b, a, order) - math.exp(log_gamma_ratio(a, b) + b * math.log(a)))

    ratios = [err(2 * a) / err(a) for a in (25.0, 50.0, 100.0)]
    assert all(2.0 ** -(order + 2) <= r <= 2.0**-order for r in ratios), ratios
