"""Exact rational arithmetic and the small polynomial types the recursions run on.

``Rational`` is :class:`fractions.Fraction`.  ``Poly`` is a dense univariate
polynomial with rational coefficients; ``BiPoly`` is a sparse polynomial in
``b`` that is Laurent in ``gamma`` (negative powers of gamma are allowed).
All values are immutable.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction

_OPS = {
    "+": operator.add,
    "-": operator.sub,
    "*": operator.mul,
    "/": operator.truediv,
}


def rat_arith(x, y, op):
    """Apply ``op`` (one of ``+ - * /``) to two rationals, exactly.

    Division by zero raises :class:`ZeroDivisionError`.
    """
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operator {op!r}") from None
    return fn(Fraction(x), Fraction(y))


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class Poly:
    """Dense univariate polynomial with Fraction coefficients.

    ``coeffs[i]`` is the coefficient of ``var**i``.  Trailing zeros are
    stripped, so the zero polynomial has ``coeffs == ()``.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var="x"):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def constant(cls, value, var="x"):
        return cls([value], var)

    @classmethod
    def monomial(cls, degree, coeff=1, var="x"):
        return cls([0] * degree + [coeff], var)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other], self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs], self.var)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return Poly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = Poly([1], self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner):
        """Return ``self(inner)`` for another polynomial ``inner``."""
        acc = Poly((), inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*{self.var}")
            else:
                parts.append(f"{c}*{self.var}^{i}")
        return " + ".join(parts)


class BiPoly:
    """Sparse polynomial in ``b`` and Laurent polynomial in ``gamma``.

    ``terms`` maps ``(deg_b, deg_gamma)`` to a nonzero Fraction; ``deg_b`` is
    a nonnegative integer and ``deg_gamma`` any integer.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            if i < 0:
                raise ValueError("negative power of b")
            c = _as_fraction(c)
            if c != 0:
                clean[(int(i), int(j))] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def constant(cls, value):
        return cls({(0, 0): value})

    @classmethod
    def b(cls):
        return cls({(1, 0): 1})

    @classmethod
    def gamma(cls, power=1):
        return cls({(0, power): 1})

    @classmethod
    def from_poly_in_b(cls, poly):
        return cls({(i, 0): c for i, c in enumerate(poly.coeffs)})

    def is_zero(self):
        return not self.terms

    def _coerce(self, other):
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return BiPoly.constant(other)
        if isinstance(other, Poly):
            return BiPoly.from_poly_in_b(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiPoly({k: c * other for k, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = BiPoly.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def substitute_b(self, value):
        """Exact substitution of a rational for ``b``; the result is Laurent in gamma only."""
        value = _as_fraction(value)
        out = {}
        for (i, j), c in self.terms.items():
            out[(0, j)] = out.get((0, j), 0) + c * value**i
        return BiPoly(out)

    def monomials(self):
        """Terms as ``(deg_b, deg_gamma, coeff)`` sorted by ``(deg_b, deg_gamma)``."""
        return [(i, j, c) for (i, j), c in sorted(self.terms.items())]

    def __call__(self, b_val, gamma_val):
        return bipoly_eval(self, b_val, gamma_val)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c} * b^{i} * γ^{j}" for i, j, c in self.monomials())


def bipoly_arith(p, q, op):
    """Exact ``+``, ``-`` or ``*`` of two :class:`BiPoly` values."""
    if op not in ("+", "-", "*"):
        raise ValueError(f"unknown operator {op!r}")
    return _OPS[op](p, q)


def bipoly_eval(p, b_val, gamma_val):
    """Evaluate ``p`` at floats ``(b, gamma)`` with a nested Horner scheme."""
    if not p.terms:
        return 0.0
    b_val = float(b_val)
    gamma_val = float(gamma_val)
    jmin = min(j for _, j in p.terms)
    if jmin < 0 and gamma_val == 0.0:
        raise ZeroDivisionError("gamma=0 with a negative gamma exponent")
    by_b = {}
    for (i, j), c in p.terms.items():
        by_b.setdefault(i, {})[j - jmin] = c
    acc = 0.0
    for i in range(max(by_b), -1, -1):
        row = by_b.get(i)
        inner = 0.0
        if row:
            for j in range(max(row), -1, -1):
                inner = inner * gamma_val + float(row.get(j, 0))
        acc = acc * b_val + inner
    return acc * gamma_val**jmin
