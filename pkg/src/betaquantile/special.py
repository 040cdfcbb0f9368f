"""Float special functions and the bracketed inversions used as quantile oracles.

log-gamma and polygamma shift the argument upward with the functional
equation and then sum the Bernoulli (Stirling) asymptotic series.  The
regularized incomplete beta uses the usual continued fraction with the
symmetry switch; the incomplete gamma uses its series / continued fraction
pair.  Quantiles are found by a geometric bracket search followed by a
Newton/bisection hybrid working on the logarithm of the unknown, so that
quantiles as small as p**(1/a) for tiny ``a`` do not underflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .combinatorics import bernoulli_number

LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
EULER_GAMMA = 0.57721566490153286060651209

_EPS = 2.0**-52
_TINY = 1e-300
_CF_MAX_ITER = 100000


class DomainError(ValueError):
    """Argument outside the domain of a special function."""


class ConvergenceError(RuntimeError):
    """Iteration did not converge; ``bracket`` holds the last enclosing interval."""

    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


@dataclass(frozen=True)
class QuantileQuery:
    a: float
    b: float
    p: float

    def __post_init__(self):
        if not (self.a > 0 and math.isfinite(self.a)):
            raise DomainError(f"a must be positive, got {self.a}")
        if not (self.b > 0 and math.isfinite(self.b)):
            raise DomainError(f"b must be positive, got {self.b}")
        if not (0.0 < self.p < 1.0):
            raise DomainError(f"p must lie in (0, 1), got {self.p}")


@dataclass(frozen=True)
class OracleConfig:
    """Tolerances for the root finders.

    ``x_tolerance`` bounds the last step in log-space relative to ``|log x|``;
    ``f_tolerance`` bounds the residual of the distribution function.
    """

    x_tolerance: float = 1e-13
    f_tolerance: float = 1e-14
    max_iterations: int = 200

    def __post_init__(self):
        if not (self.x_tolerance > 0 and self.f_tolerance > 0):
            raise ValueError("tolerances must be strictly positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")


DEFAULT_CONFIG = OracleConfig()


@lru_cache(maxsize=None)
def _bernoulli_float(n):
    return float(bernoulli_number(n))


def _stirling_tail(z):
    """sum_{k>=1} B_2k / (2k (2k-1) z^(2k-1)), for z >= 10."""
    zinv2 = 1.0 / (z * z)
    term_power = 1.0 / z
    total = 0.0
    for k in range(1, 20):
        term = _bernoulli_float(2 * k) / (2 * k * (2 * k - 1)) * term_power
        total += term
        if abs(term) < 1e-18 * max(1.0, abs(total)):
            break
        term_power *= zinv2
    return total


def log_gamma(x):
    """log Gamma(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"log_gamma needs x > 0, got {x}")
    shift = 1.0
    z = float(x)
    while z < 10.0:
        shift *= z
        z += 1.0
    value = (z - 0.5) * math.log(z) - z + LOG_SQRT_2PI + _stirling_tail(z)
    return value - math.log(shift) if shift != 1.0 else value


def log_gamma_ratio(a, b):
    """log(Gamma(a) / Gamma(a + b)) without cancelling two large log-gammas.

    For ``a >= 10`` the Stirling forms of both terms are subtracted
    analytically; otherwise the plain difference is used.
    """
    if not (a > 0 and b > 0):
        raise DomainError("log_gamma_ratio needs a, b > 0")
    if a < 10.0:
        return log_gamma(a) - log_gamma(a + b)
    return (
        -(a + b - 0.5) * math.log1p(b / a)
        - b * math.log(a)
        + b
        + _stirling_tail(a)
        - _stirling_tail(a + b)
    )


def log_beta(a, b):
    """log B(a, b) = log Gamma(a) + log Gamma(b) - log Gamma(a + b)."""
    if not (a > 0 and b > 0):
        raise DomainError("log_beta needs a, b > 0")
    small, large = (a, b) if a <= b else (b, a)
    if large < 10.0:
        return log_gamma(a) + log_gamma(b) - log_gamma(a + b)
    if small < 10.0:
        return log_gamma(small) + log_gamma_ratio(large, small)
    s = a + b
    return (
        LOG_SQRT_2PI
        - 0.5 * math.log(s)
        - (a - 0.5) * math.log1p(b / a)
        - (b - 0.5) * math.log1p(a / b)
        + _stirling_tail(a)
        + _stirling_tail(b)
        - _stirling_tail(s)
    )


def polygamma(n, x):
    """Psi(n, x), the (n+1)-th derivative of log Gamma, for x > 0 and 0 <= n <= 32."""
    if not x > 0:
        raise DomainError(f"polygamma needs x > 0, got {x}")
    if not (isinstance(n, int) and 0 <= n <= 32):
        raise DomainError(f"polygamma order must be an integer in [0, 32], got {n}")
    z = float(x)
    threshold = 15.0 + 2.0 * n
    # Psi(n, z) = Psi(n, z + 1) - (-1)^n n! / z^(n+1)
    lifted = 0.0
    while z < threshold:
        lifted += z ** -(n + 1)
        z += 1.0
    sign = -1.0 if n % 2 else 1.0
    nfact = math.factorial(n)

    if n == 0:
        asym = math.log(z) - 0.5 / z
        zinv2 = 1.0 / (z * z)
        power = zinv2
        for k in range(1, 30):
            term = _bernoulli_float(2 * k) / (2 * k) * power
            asym -= term
            if abs(term) < 1e-18 * abs(asym):
                break
            power *= zinv2
        return asym - lifted

    # (-1)^(n+1) [ (n-1)!/z^n + n!/(2 z^(n+1)) + sum_k B_2k (2k+n-1)!/((2k)! z^(2k+n)) ]
    total = math.factorial(n - 1) / z**n + nfact / (2.0 * z ** (n + 1))
    zinv2 = 1.0 / (z * z)
    power = z**-n * zinv2
    ratio = float(math.factorial(n + 1)) / 2.0  # (2k+n-1)!/(2k)! at k=1
    for k in range(1, 40):
        term = _bernoulli_float(2 * k) * ratio * power
        total += term
        if abs(term) < 1e-18 * abs(total):
            break
        power *= zinv2
        ratio *= (2 * k + n) * (2 * k + n + 1) / ((2 * k + 1) * (2 * k + 2))
    return -sign * total - sign * nfact * lifted


def _beta_cf(x, a, b):
    """Continued fraction for I_x(a, b) (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h
    raise ConvergenceError(f"incomplete beta continued fraction failed at x={x}, a={a}, b={b}")


def _check_beta_args(a, b):
    if not (a > 0 and b > 0):
        raise DomainError(f"incomplete beta needs a, b > 0, got a={a}, b={b}")


def reg_inc_beta(x, a, b):
    """Regularized incomplete beta I_x(a, b), the Beta(a, b) distribution function."""
    _check_beta_args(a, b)
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"incomplete beta needs 0 <= x <= 1, got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    if x <= (a + 1.0) / (a + b + 2.0):
        return math.exp(_log_front(math.log(x), x, a, b)) * _beta_cf(x, a, b) / a
    y = 1.0 - x
    return 1.0 - math.exp(_log_front(math.log(y), y, b, a)) * _beta_cf(y, b, a) / b


def _log_front(log_x, x, a, b):
    """log(x^a (1-x)^b / B(a, b))."""
    s = a + b
    if min(a, b) >= 10.0 and x >= 0.5 * a / s:
        # both parameters large: expand around the mode x0 = a/s so that the
        # O(a) logarithms cancel analytically instead of numerically
        lam = x * s - a
        return (
            0.5 * math.log(a * b / (2.0 * math.pi * s))
            - _stirling_tail(a)
            - _stirling_tail(b)
            + _stirling_tail(s)
            - a * _rlog1(lam / a)
            - b * _rlog1(-lam / b)
        )
    return a * log_x + b * math.log1p(-x) - log_beta(a, b)


def _rlog1(t):
    """t - log(1 + t)."""
    if abs(t) < 0.1:
        # alternating series t^2/2 - t^3/3 + ...
        total = 0.0
        power = t * t
        for k in range(2, 40):
            term = power / k if k % 2 == 0 else -power / k
            total += term
            if abs(term) < 1e-18 * total:
                break
            power *= t
        return total
    return t - math.log1p(t)


def log_reg_inc_beta(log_x, a, b):
    """log I_x(a, b) given log x <= 0; stays finite when x itself underflows."""
    _check_beta_args(a, b)
    if log_x > 0:
        raise DomainError("log_x must be <= 0")
    if log_x == 0.0:
        return 0.0
    x = math.exp(log_x)
    if x <= (a + 1.0) / (a + b + 2.0):
        return _log_front(log_x, x, a, b) + math.log(_beta_cf(x, a, b) / a)
    y = -math.expm1(log_x)
    upper = math.exp(_log_front(math.log(y), y, b, a)) * _beta_cf(y, b, a) / b
    return math.log1p(-upper)


def reg_inc_gamma(b, x):
    """Regularized lower incomplete gamma P(b, x)."""
    if not b > 0:
        raise DomainError(f"incomplete gamma needs b > 0, got {b}")
    if x < 0:
        raise DomainError(f"incomplete gamma needs x >= 0, got {x}")
    if x == 0.0:
        return 0.0
    if b >= 10.0 and x >= 0.5 * b:
        # x^b e^-x / Gamma(b) around x = b, without the O(b) cancellation
        log_front = 0.5 * math.log(b) - LOG_SQRT_2PI - _stirling_tail(b) - b * _rlog1((x - b) / b)
    else:
        log_front = b * math.log(x) - x - log_gamma(b)
    if x < b + 1.0:
        term = 1.0 / b
        total = term
        ap = b
        for _ in range(_CF_MAX_ITER):
            ap += 1.0
            term *= x / ap
            total += term
            if abs(term) < abs(total) * 1e-17:
                return total * math.exp(log_front)
        raise ConvergenceError(f"incomplete gamma series failed at b={b}, x={x}")
    # Lentz continued fraction for Q(b, x)
    bb = x + 1.0 - b
    c = 1.0 / _TINY
    d = 1.0 / bb
    h = d
    for i in range(1, _CF_MAX_ITER):
        an = -i * (i - b)
        bb += 2.0
        d = an * d + bb
        if abs(d) < _TINY:
            d = _TINY
        c = bb + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return 1.0 - math.exp(log_front) * h
    raise ConvergenceError(f"incomplete gamma continued fraction failed at b={b}, x={x}")


def _solve_log_increasing(residual, slope, t0, cfg, what):
    """Find t <= 0 with residual(t) = 0 for an increasing residual.

    ``residual(t)`` returns ``(r, f_gap)`` where ``f_gap`` is the absolute
    distribution-function residual used for the stopping test.  ``slope(t, r)``
    is dr/dt.  The bracket is grown geometrically from ``t0`` and refined by
    Newton steps that are rejected whenever they leave the bracket.
    """
    lo = hi = t0
    r_lo, _ = residual(lo)
    grow = 0
    while r_lo >= 0:
        hi = lo
        lo *= 2.0
        r_lo, _ = residual(lo)
        grow += 1
        if grow > 2000 or lo < -1e300:
            raise ConvergenceError(f"{what}: no lower bracket found", (lo, hi))
    if hi == lo:
        hi = t0 / 2.0
        r_hi, _ = residual(hi)
        while r_hi < 0:
            lo, r_lo = hi, r_hi
            hi /= 2.0
            r_hi, _ = residual(hi)
            grow += 1
            if grow > 2000 or hi == 0.0:
                raise ConvergenceError(f"{what}: no upper bracket found", (lo, hi))

    t = 0.5 * (lo + hi)
    for _ in range(cfg.max_iterations):
        r, gap = residual(t)
        if r == 0.0:
            return t
        if r < 0:
            lo = t
        else:
            hi = t
        d = slope(t, r)
        step = -r / d if d > 0 and math.isfinite(d) else math.inf
        t_new = t + step
        if not (lo < t_new < hi):
            t_new = 0.5 * (lo + hi)
        if gap <= cfg.f_tolerance and abs(t_new - t) <= cfg.x_tolerance * abs(t):
            return t_new
        if t_new == t or hi - lo <= 4 * _EPS * abs(t):
            if gap <= cfg.f_tolerance:
                return t_new
            raise ConvergenceError(f"{what}: bracket collapsed with residual {gap}", (lo, hi))
        t = t_new
    raise ConvergenceError(f"{what}: no convergence after {cfg.max_iterations} iterations", (lo, hi))


def log_beta_quantile(query, cfg=DEFAULT_CONFIG):
    """log q where I_q(a, b) = p; finite even when q underflows."""
    a, b, p = query.a, query.b, query.p
    log_p = math.log(p)
    lbeta = log_beta(a, b)

    def residual(t):
        log_i = log_reg_inc_beta(t, a, b)
        return log_i - log_p, abs(math.exp(log_i) - p)

    def slope(t, r):
        # d log I / d log x = x f(x) / I
        log_density = a * t + (b - 1.0) * math.log1p(-math.exp(t)) - lbeta
        return math.exp(log_density - (r + log_p))

    return _solve_log_increasing(residual, slope, log_p / a, cfg, "beta quantile")


def beta_quantile_oracle(query, cfg=DEFAULT_CONFIG):
    """The p-quantile q of Beta(a, b), found by bracketed Newton/bisection."""
    return math.exp(log_beta_quantile(query, cfg))


def phi_oracle(a, b, p, cfg=DEFAULT_CONFIG):
    """-a log q(a) computed from the inverted incomplete beta."""
    return -a * log_beta_quantile(QuantileQuery(a, b, p), cfg)


def gamma_quantile(b, p, cfg=DEFAULT_CONFIG):
    """gamma_b, the (1 - p)-quantile of the Gamma(b, 1) distribution."""
    if not b > 0:
        raise DomainError(f"b must be positive, got {b}")
    if not (0.0 < p < 1.0):
        raise DomainError(f"p must lie in (0, 1), got {p}")
    target = 1.0 - p
    lg = log_gamma(b)

    # unknown is u = log x; shift so that the solver's t = u - u_max stays <= 0
    u_max = math.log(b + 50.0 + 50.0 * math.sqrt(b) - 10.0 * math.log(p))

    def residual(t):
        x = math.exp(t + u_max)
        diff = reg_inc_gamma(b, x) - target
        return diff, abs(diff)

    def slope(t, r):
        u = t + u_max
        return math.exp(b * u - math.exp(u) - lg)

    start = math.log(max(b, 1e-3)) - u_max
    return math.exp(_solve_log_increasing(residual, slope, start, cfg, "gamma quantile") + u_max)
