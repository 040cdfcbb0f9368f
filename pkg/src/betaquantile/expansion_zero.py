"""Expansion of phi(a) = -a log q(a) and of q(a) / p**(1/a) as a -> 0.

Stored coefficients follow the integer-b closed form: ``coeffs[0] = log p``
and, for n >= 1, ``coeffs[n] = Psi(n-1, b) - Psi(n-1, 1)``, the n-th
derivative of phi at 0.  The truncated series is therefore

    phi(a) ~ -coeffs[0] + sum_{n=1}^{N} coeffs[n] a**n / n!

which tends to -log p as a -> 0.  The series is asymptotic: truncate it,
do not sum it.  Beyond-all-orders terms of size about a * q(a) are not
represented, so the truncation error law only shows once p**(1/a) is
negligible against a**(N+1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import bell_sequence
from .special import EULER_GAMMA, DomainError, polygamma

DEFAULT_ORDER = 16


@dataclass(frozen=True)
class SeriesAtZero:
    b: float
    p: float
    order: int
    coeffs: tuple
    exact: bool = False
    rational: tuple | None = None  # exact c_1..c_N when b is a positive integer

    @property
    def taylor(self):
        """Coefficients of a**n in the evaluated phi series."""
        out = [-self.coeffs[0]]
        for n in range(1, self.order + 1):
            out.append(self.coeffs[n] / math.factorial(n))
        return out


def _positive_integer(b):
    if isinstance(b, bool):
        return None
    if isinstance(b, int):
        return b if b >= 1 else None
    if isinstance(b, float) and b.is_integer() and b >= 1:
        return int(b)
    return None


def integer_b_coefficient(b, n):
    """(-1)^(n+1) (n-1)! sum_{k=1}^{b-1} k^-n, exactly."""
    s = sum(Fraction(1, k**n) for k in range(1, b))
    return (-1) ** (n + 1) * math.factorial(n - 1) * s


def coeffs_at_zero(b, p, order=DEFAULT_ORDER, use_exact=True):
    """Coefficients of the small-a expansion of phi.

    For positive integer ``b`` (and ``use_exact``) the closed form is
    evaluated in exact arithmetic and ``exact`` is set; otherwise
    ``Psi(n-1, b) - Psi(n-1, 1)`` comes from the float polygamma.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    if not b > 0:
        raise DomainError(f"b must be positive, got {b}")
    if not (0.0 < p < 1.0):
        raise DomainError(f"p must lie in (0, 1), got {p}")
    coeffs = [math.log(p)]
    b_int = _positive_integer(b) if use_exact else None
    if b_int is not None:
        rational = tuple(integer_b_coefficient(b_int, n) for n in range(1, order + 1))
        coeffs.extend(float(c) for c in rational)
        return SeriesAtZero(b, p, order, tuple(coeffs), True, rational)
    for n in range(1, order + 1):
        coeffs.append(polygamma(n - 1, b) - polygamma(n - 1, 1.0))
    return SeriesAtZero(b, p, order, tuple(coeffs))


def phi_approx_zero(series, a):
    """Truncated small-a series for phi at ``a``."""
    if not a > 0:
        raise DomainError(f"a must be positive, got {a}")
    acc = 0.0
    for c in reversed(series.taylor[1:]):
        acc = (acc + c) * a
    return series.taylor[0] + acc


def q_ratio_expansion_zero(b, order=DEFAULT_ORDER):
    """Coefficients r_n with q(a) / p**(1/a) ~ sum_n r_n a**n as a -> 0.

    q / p**(1/a) ~ exp(-(1/a) log(Gamma(a+b) / (Gamma(a+1) Gamma(b)))); the
    exponent is -(gamma + Psi(0, b)) + sum_m x_m a**m / m! with
    x_m = -c_{m+1} / (m + 1), c_n being the derivative coefficients of
    :func:`coeffs_at_zero`.  Hence r_n = exp(-gamma - Psi(0, b)) Bell_n(x) / n!.
    """
    series = coeffs_at_zero(b, 0.5, order + 1)
    xs = [-series.coeffs[m + 1] / (m + 1) for m in range(1, order + 1)]
    lead = math.exp(-EULER_GAMMA - polygamma(0, b))
    if series.exact:
        # Psi(0, b) + gamma = H_{b-1} exactly for integer b
        lead = math.exp(-series.coeffs[1])
    bells = bell_sequence(xs)
    return [lead * bells[n] / math.factorial(n) for n in range(order + 1)]


def q_approx_zero(b, p, a, order=DEFAULT_ORDER):
    """p**(1/a) times the truncated q-ratio series."""
    ratio = q_ratio_expansion_zero(b, order)
    acc = 0.0
    for r in reversed(ratio):
        acc = acc * a + r
    return math.exp(math.log(p) / a) * acc
