"""Asymptotic expansions of the p-quantile of Beta(a, b) in its first parameter."""

from .combinatorics import (
    bernoulli_number,
    bernoulli_polynomial,
    check_norlund_bell_identity,
    complete_bell,
    norlund_polynomial,
    pochhammer,
)
from .exactmath import BiPoly, Poly, Rational, bipoly_arith, bipoly_eval, rat_arith
from .expansion_inf import (
    DeltaTable,
    PhiCoefficient,
    SeriesAtInf,
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
from .expansion_zero import (
    SeriesAtZero,
    coeffs_at_zero,
    phi_approx_zero,
    q_approx_zero,
    q_ratio_expansion_zero,
)
from .report import EvalReport, compare, evaluate
from .special import (
    ConvergenceError,
    DomainError,
    OracleConfig,
    QuantileQuery,
    beta_quantile_oracle,
    gamma_quantile,
    log_beta_quantile,
    log_gamma,
    log_gamma_ratio,
    phi_oracle,
    polygamma,
    reg_inc_beta,
    reg_inc_gamma,
)

__version__ = "0.1.0"
