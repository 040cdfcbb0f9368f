"""Side-by-side comparison of the truncated expansions with the numerical oracle."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from . import expansion_inf, expansion_zero
from .special import DEFAULT_CONFIG, phi_oracle

CENTERS = ("zero", "inf")


@dataclass(frozen=True)
class EvalReport:
    """One comparison row.

    ``scaled_error`` is ``abs_error / a**(N+1)`` at zero and
    ``abs_error * a**(N+1)`` at infinity, so that it settles to the size of
    the first omitted term.
    """

    a: float
    approx: float
    oracle: float
    abs_error: float
    scaled_error: float

    def as_dict(self):
        return asdict(self)


def phi_approximator(center, b, p, order, cfg=DEFAULT_CONFIG):
    """Return a callable a -> truncated phi series around ``center``."""
    if center == "zero":
        series = expansion_zero.coeffs_at_zero(b, p, order)
        return lambda a: expansion_zero.phi_approx_zero(series, a)
    if center == "inf":
        series = expansion_inf.phi_series_inf(b, p, order, cfg)
        return lambda a: expansion_inf.phi_approx_inf(series, a)
    raise ValueError(f"center must be one of {CENTERS}, got {center!r}")


def evaluate(center, b, p, order, a_values, cfg=DEFAULT_CONFIG):
    """``(a, phi_approx, q_approx)`` triples; q is recovered as exp(-phi/a)."""
    approx = phi_approximator(center, b, p, order, cfg)
    rows = []
    for a in a_values:
        phi = approx(a)
        rows.append((a, phi, math.exp(-phi / a)))
    return rows


def compare(center, b, p, order, a_values, cfg=DEFAULT_CONFIG):
    """Compare the truncated phi series with -a log q from the oracle."""
    approx = phi_approximator(center, b, p, order, cfg)
    sign = -1 if center == "zero" else 1
    rows = []
    for a in a_values:
        value = approx(a)
        exact = phi_oracle(a, b, p, cfg)
        err = abs(value - exact)
        rows.append(EvalReport(a, value, exact, err, err * a ** (sign * (order + 1))))
    return rows
