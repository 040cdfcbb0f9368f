"""Expansion of phi(a) = -a log q(a) and of q(a) as a -> infinity.

phi(a) ~ sum_n (-1)^n phi_n / (n! a^n), where the phi_n are polynomials in b
and Laurent polynomials in gamma_b (the (1-p)-quantile of Gamma(b)).  They
are generated symbolically, once, by the coupled recursion

    phi_n = - sum_{j=1}^{n-1} C(n-1, j) phi_{n-j} delta(0, j, 0)
            - sum_{k=0}^{n-2} sum_{j=0}^{k} C(k, j) phi_{k-j+1} delta(0, j, n-k-1)
            + B_n^(1-b) sum_{k=0}^{n-1} (b+n-k)_k gamma^(n-k)

    delta(k, m, n) = delta(k, m-1, n+1)
                     + sum_{j=0}^{m-1} C(m-1, j) phi_{m-j} delta(k+1, j, n)

    delta(k, 0, n) = B_n^(1-b) sum_{j=0}^{k} C(k, j) (-1)^(k-j) (b+n-j)_j gamma^(n-j)

with phi_0 = gamma.  Numbers for a particular (b, p) are substituted after
the fact.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .combinatorics import bell_sequence, norlund_at_one_minus_b, pochhammer
from .exactmath import BiPoly, bipoly_eval
from .special import DEFAULT_CONFIG, DomainError, gamma_quantile

DEFAULT_ORDER = 10

_B = BiPoly.b()


@dataclass(frozen=True)
class PhiCoefficient:
    n: int
    poly: BiPoly

    def __call__(self, b, gamma_b):
        return bipoly_eval(self.poly, b, gamma_b)


class DeltaTable:
    """Memo for delta(k, m, n) plus the phi_n computed so far.

    Not shared across threads unless the caller holds ``lock``.
    """

    def __init__(self):
        self.memo = {}
        self.phis = [BiPoly.gamma()]
        self.lock = threading.RLock()

    def initial(self, k, n):
        """The m = 0 boundary value delta(k, 0, n), recomputed from scratch."""
        total = BiPoly()
        for j in range(k + 1):
            term = BiPoly.gamma(n - j) * pochhammer(_B + (n - j), j)
            total = total + term * (comb(k, j) * (-1) ** (k - j))
        return BiPoly.from_poly_in_b(norlund_at_one_minus_b(n)) * total


def delta(k, m, n, table):
    """delta(k, m, n) from ``table``; phi_1..phi_m must already be in the table."""
    if min(k, m, n) < 0:
        raise ValueError("delta indices must be nonnegative")
    if m >= len(table.phis):
        raise ValueError(f"delta(., {m}, .) needs phi_{m}; only {len(table.phis) - 1} computed")
    key = (k, m, n)
    hit = table.memo.get(key)
    if hit is not None:
        return hit
    if m == 0:
        value = table.initial(k, n)
    else:
        value = delta(k, m - 1, n + 1, table)
        for j in range(m):
            value = value + table.phis[m - j] * delta(k + 1, j, n, table) * comb(m - 1, j)
    table.memo[key] = value
    return value


def _next_phi(table):
    n = len(table.phis)
    phis = table.phis
    total = BiPoly()
    # for n = 1 both sums below are empty and only the Norlund term survives
    for j in range(1, n):
        total = total - phis[n - j] * delta(0, j, 0, table) * comb(n - 1, j)
    for k in range(n - 1):
        for j in range(k + 1):
            total = total - phis[k - j + 1] * delta(0, j, n - k - 1, table) * comb(k, j)
    tail = BiPoly()
    for k in range(n):
        tail = tail + pochhammer(_B + (n - k), k) * BiPoly.gamma(n - k)
    total = total + BiPoly.from_poly_in_b(norlund_at_one_minus_b(n)) * tail
    phis.append(total)
    return total


_default_table = DeltaTable()


def phi_coefficient(n, table=None):
    """phi_n as an exact polynomial in (b, gamma_b)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    table = _default_table if table is None else table
    with table.lock:
        while len(table.phis) <= n:
            _next_phi(table)
        return PhiCoefficient(n, table.phis[n])


@dataclass(frozen=True)
class SeriesAtInf:
    b: float
    p: float
    order: int
    gamma_b: float
    coeffs: tuple  # (-1)^n phi_n(b, gamma_b) / n!
    phi_values: tuple  # phi_n(b, gamma_b)


def phi_series_inf(b, p, order=DEFAULT_ORDER, cfg=DEFAULT_CONFIG):
    """Evaluate the large-a coefficients at (b, gamma_b(p))."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    if not b > 0:
        raise DomainError(f"b must be positive, got {b}")
    gamma_b = gamma_quantile(b, p, cfg)
    # exact evaluation at the binary64 inputs: the phi_n cancel heavily (to
    # zero at b = 1) and any float noise is amplified by a**-n
    b_exact, g_exact = Fraction(b), Fraction(gamma_b)
    values = [gamma_b]
    for n in range(1, order + 1):
        poly = phi_coefficient(n).poly
        values.append(float(sum(c * b_exact**i * g_exact**j for (i, j), c in poly.terms.items())))
    coeffs = tuple((-1) ** n * v / math.factorial(n) for n, v in enumerate(values))
    return SeriesAtInf(b, p, order, gamma_b, coeffs, tuple(values))


def phi_approx_inf(series, a):
    """sum_{n=0}^{N} coeffs[n] / a**n."""
    if not a > 0:
        raise DomainError(f"a must be positive, got {a}")
    inv = 1.0 / a
    acc = 0.0
    for c in reversed(series.coeffs):
        acc = acc * inv + c
    return acc


def exp_of_series(coeffs):
    """Expansion of exp(f) for f(x) ~ sum_k a_k / (k! x^k).

    Returns ``[e^{a_0} Bell_k(a_1..a_k) / k! for k = 0..N]``, the
    coefficients of 1/x**k in exp(f).
    """
    coeffs = list(coeffs)
    if not coeffs:
        return []
    lead = math.exp(coeffs[0])
    bells = bell_sequence(coeffs[1:])
    return [lead * bells[k] / math.factorial(k) for k in range(len(coeffs))]


def q_coefficients_inf(series):
    """Coefficients of 1/a**n in the large-a expansion of q.

    log q = -phi/a, whose k!-normalized coefficients are
    x_k = (-1)^k k phi_{k-1}; the exponential is taken with Bell polynomials.
    The result has ``order + 1`` entries.
    """
    xs = [0.0] + [(-1) ** k * k * series.phi_values[k - 1] for k in range(1, series.order + 1)]
    return exp_of_series(xs)


def q_approx_inf(series, a):
    """Truncated Bell-polynomial series for q at ``a``."""
    inv = 1.0 / a
    acc = 0.0
    for c in reversed(q_coefficients_inf(series)):
        acc = acc * inv + c
    return acc


def gamma_ratio_coefficients(b, order=DEFAULT_ORDER):
    """Coefficients of 1/a**n in Gamma(a) a**b / Gamma(a+b) ~ sum (-1)^n (b)_n B_n^(1-b) / (n! a^n)."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    out = []
    for n in range(order + 1):
        value = float(norlund_at_one_minus_b(n)(b))
        out.append((-1) ** n * pochhammer(b, n) * value / math.factorial(n))
    return out


def gamma_ratio_approx(b, a, order=DEFAULT_ORDER):
    """Truncated Norlund series for Gamma(a) a**b / Gamma(a+b)."""
    acc = 0.0
    for c in reversed(gamma_ratio_coefficients(b, order)):
        acc = acc / a + c
    return acc
