"""Bernoulli numbers and polynomials, complete Bell polynomials, Norlund polynomials.

Everything here is exact.  The Norlund polynomials are built from the
Bell-polynomial form of ``exp(c * log(x / (e^x - 1)))``, and
:func:`check_norlund_bell_identity` verifies the Bell/Norlund identities as
structural polynomial equalities.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .exactmath import Poly

_bernoulli = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli_number(n):
    """Return B_n with the convention B_1 = -1/2.

    Uses sum_{k=0}^{n} C(n+1, k) B_k = 0 and memoizes every value computed.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    with _bernoulli_lock:
        for m in range(len(_bernoulli), n + 1):
            if m > 1 and m % 2 == 1:
                _bernoulli.append(Fraction(0))
                continue
            s = sum(comb(m + 1, k) * _bernoulli[k] for k in range(m))
            _bernoulli.append(-s / (m + 1))
        return _bernoulli[n]


@lru_cache(maxsize=None)
def bernoulli_polynomial(n, var="t"):
    """B_n(t) = sum_k C(n, k) B_k t^(n-k)."""
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        coeffs[n - k] = comb(n, k) * bernoulli_number(k)
    return Poly(coeffs, var)


def complete_bell(n, xs):
    """Complete Bell polynomial B_n(x_1, ..., x_n).

    ``xs`` must have exactly ``n`` entries.  Works for any values supporting
    ``+``, ``*`` and multiplication by ``int`` (Fractions, floats, Poly,
    BiPoly).  Computed with the binomial recurrence
    ``B_{m+1} = sum_k C(m, k) B_{m-k} x_{k+1}``.
    """
    xs = list(xs)
    if len(xs) != n:
        raise ValueError(f"complete_bell({n}) needs {n} arguments, got {len(xs)}")
    return bell_sequence(xs)[n]


def bell_sequence(xs):
    """``[B_0, B_1(x_1), ..., B_n(x_1..x_n)]`` for ``n = len(xs)``."""
    xs = list(xs)
    seq = [1]
    for m in range(len(xs)):
        acc = 0
        for k in range(m + 1):
            acc = acc + seq[m - k] * xs[k] * comb(m, k)
        seq.append(acc)
    return seq


def integer_partitions(n, max_part=None):
    """Yield partitions of n as non-increasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in integer_partitions(n - first, first):
            yield (first,) + rest


def bell_by_partitions(n, xs):
    """Complete Bell polynomial by direct summation over partitions of n.

    Factorial cost; kept as an independent check on :func:`complete_bell`.
    """
    xs = list(xs)
    if len(xs) != n:
        raise ValueError(f"bell_by_partitions({n}) needs {n} arguments, got {len(xs)}")
    total = 0
    for part in integer_partitions(n):
        kappa = [0] * (n + 1)
        for j in part:
            kappa[j] += 1
        weight = factorial(n)
        for j in range(1, n + 1):
            weight //= factorial(kappa[j]) * factorial(j) ** kappa[j]
        term = weight
        for j in range(1, n + 1):
            for _ in range(kappa[j]):
                term = term * xs[j - 1]
        total = total + term
    return total


def pochhammer(m, n):
    """Rising factorial (m)_n = m (m+1) ... (m+n-1); (m)_0 = 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    result = 1
    for i in range(n):
        result = result * (m + i)
    return result


@lru_cache(maxsize=None)
def norlund_polynomial(n, var="c"):
    """Norlund polynomial B_n^(c) as a polynomial in ``c``.

    B_n^(c) = Bell_n(y_1, ..., y_n) with y_j = (-1)^(j+1) c B_j / j, i.e. the
    Taylor coefficients of exp(c * log(x/(e^x - 1))).
    """
    c = Poly([0, 1], var)
    ys = [c * ((-1) ** (j + 1) * bernoulli_number(j) / j) for j in range(1, n + 1)]
    value = complete_bell(n, ys)
    if isinstance(value, int):
        return Poly([value], var)
    return value


@lru_cache(maxsize=None)
def norlund_at_one_minus_b(n):
    """B_n^(1-b) as a polynomial in ``b``."""
    return norlund_polynomial(n).compose(Poly([1, -1], "b"))


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of the Bell/Norlund identities at one index ``n``.

    ``reflected_outer`` reads the arguments of the reflected identity as
    ``w_j ((-1)^(j+1) B_{j+1}(c) - B_{j+1})``; ``reflected_grouped`` reads
    them as ``w_j (-1)^(j+1) (B_{j+1}(c) - B_{j+1})``.  The two agree because
    odd-index Bernoulli numbers above B_1 vanish.
    """

    n: int
    bell_form: bool
    ratio_form: bool
    reflected_outer: bool
    reflected_grouped: bool

    @property
    def passed(self):
        return self.bell_form and self.ratio_form and self.reflected_outer and self.reflected_grouped


def _ratio_weight(j):
    # Bell arguments carry the factor (j-1)!/(j+1): B_{j+1}(b) - B_{j+1} alone
    # is off by this weight already at n = 1
    return Fraction(factorial(j - 1), j + 1)


def identity_sides(n):
    """Both sides of each identity at index ``n``, as polynomials.

    Keys: ``bell_form``, ``ratio_form``, ``reflected_outer``,
    ``reflected_grouped``; each maps to a ``(lhs, rhs)`` pair.

    * bell_form: B_n^(c) = Bell_n(c B_1, -c B_2/2, c B_3/3, ...)
    * ratio_form: (b)_n B_n^(1-b) = Bell_n(w_1 (B_2(b) - B_2), ..., w_n (B_{n+1}(b) - B_{n+1}))
      with w_j = (j-1)!/(j+1)
    * reflected: (c-n)_n B_n^(c) = (-1)^n Bell_n(...), the image of ratio_form
      under b -> 1 - c
    """
    c = Poly([0, 1], "c")
    b = Poly([0, 1], "b")

    def as_poly(value, var):
        return value if isinstance(value, Poly) else Poly([value], var)

    bell_args = [c * ((-1) ** (j + 1) * bernoulli_number(j) / j) for j in range(1, n + 1)]
    bell_form = (norlund_polynomial(n), as_poly(complete_bell(n, bell_args), "c"))

    ratio_args = [
        (bernoulli_polynomial(j + 1, "b") - bernoulli_number(j + 1)) * _ratio_weight(j)
        for j in range(1, n + 1)
    ]
    ratio_form = (
        as_poly(pochhammer(b, n), "b") * norlund_at_one_minus_b(n),
        as_poly(complete_bell(n, ratio_args), "b"),
    )

    lhs = as_poly(pochhammer(c - n, n), "c") * norlund_polynomial(n)
    outer = [
        (bernoulli_polynomial(j + 1, "c") * (-1) ** (j + 1) - bernoulli_number(j + 1)) * _ratio_weight(j)
        for j in range(1, n + 1)
    ]
    grouped = [
        (bernoulli_polynomial(j + 1, "c") - bernoulli_number(j + 1)) * ((-1) ** (j + 1) * _ratio_weight(j))
        for j in range(1, n + 1)
    ]
    sign = (-1) ** n
    return {
        "bell_form": bell_form,
        "ratio_form": ratio_form,
        "reflected_outer": (lhs, as_poly(complete_bell(n, outer), "c") * sign),
        "reflected_grouped": (lhs, as_poly(complete_bell(n, grouped), "c") * sign),
    }


def check_norlund_bell_identity(n_max):
    """Check every identity for ``1 <= n <= n_max``; returns a list of :class:`IdentityCheck`.

    A failing identity is reported, never raised.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    report = []
    for n in range(1, n_max + 1):
        sides = identity_sides(n)
        report.append(IdentityCheck(n, *(lhs == rhs for lhs, rhs in sides.values())))
    return report
