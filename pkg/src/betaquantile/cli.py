"""Command-line front end.

    betaquantile coeffs-zero --b 2 --p 0.5 --order 6
    betaquantile coeffs-inf --b 2 --p 0.5 --order 3 --format json
    betaquantile phi-coeff-symbolic --order 3
    betaquantile eval --b 2 --p 0.5 --center inf --order 3 --a 25 50
    betaquantile compare --b 1 --p 0.5 --center inf --order 3 --a 10
    betaquantile identities --order 8
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

from . import expansion_inf, expansion_zero
from .combinatorics import check_norlund_bell_identity
from .report import CENTERS, compare, evaluate
from .special import ConvergenceError, DomainError, OracleConfig

COMMANDS = ("coeffs-zero", "coeffs-inf", "phi-coeff-symbolic", "eval", "compare", "identities")
FORMATS = ("csv", "json")

_NEEDS_BP = {"coeffs-zero", "coeffs-inf", "eval", "compare"}
_NEEDS_A = {"eval", "compare"}


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunSpec:
    command: str
    b: float | None = None
    p: float | None = None
    order: int | None = None
    a_values: tuple = ()
    center: str | None = None
    format: str = "csv"
    oracle: OracleConfig = field(default_factory=OracleConfig)

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise UsageError(f"--format must be one of {FORMATS}")
        if self.command in _NEEDS_BP and (self.b is None or self.p is None):
            raise UsageError(f"{self.command} requires --b and --p")
        if self.command in _NEEDS_A:
            if not self.a_values:
                raise UsageError(f"{self.command} requires at least one --a value")
            if self.center not in CENTERS:
                raise UsageError(f"{self.command} requires --center {{zero,inf}}")
        if self.order is not None and self.order < 0:
            raise UsageError("--order must be nonnegative")
        if self.command == "identities" and self.order is not None and self.order < 1:
            raise UsageError("identities needs --order >= 1")

    def resolved_order(self):
        if self.order is not None:
            return self.order
        if self.command == "identities":
            return 10
        if self.command == "coeffs-zero" or self.center == "zero":
            return expansion_zero.DEFAULT_ORDER
        if self.command == "phi-coeff-symbolic":
            return 3
        return expansion_inf.DEFAULT_ORDER


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _emit(fmt, header, rows, meta, out):
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
        out.write(buf.getvalue())
    else:
        doc = dict(meta)
        doc["rows"] = [dict(zip(header, row)) for row in rows]
        out.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")


def run(spec, out=None):
    """Execute ``spec``, writing the report to ``out``; returns the exit status."""
    out = sys.stdout if out is None else out
    spec.validate()
    order = spec.resolved_order()
    meta = {"command": spec.command, "order": order}
    if spec.command in _NEEDS_BP:
        meta.update(b=spec.b, p=spec.p)
    if spec.center is not None and spec.command in _NEEDS_A:
        meta["center"] = spec.center

    if spec.command == "coeffs-zero":
        series = expansion_zero.coeffs_at_zero(spec.b, spec.p, order)
        rows = [(n, c, series.exact and n > 0) for n, c in enumerate(series.coeffs)]
        _emit(spec.format, ("n", "value", "exact"), rows, meta, out)
        return 0

    if spec.command == "coeffs-inf":
        series = expansion_inf.phi_series_inf(spec.b, spec.p, order, spec.oracle)
        meta["gamma_b"] = series.gamma_b
        _emit(spec.format, ("n", "value"), list(enumerate(series.coeffs)), meta, out)
        return 0

    if spec.command == "phi-coeff-symbolic":
        rows = []
        for n in range(order + 1):
            for i, j, c in expansion_inf.phi_coefficient(n).poly.monomials():
                rows.append((n, i, j, str(c), f"{c} * b^{i} * γ^{j}"))
        _emit(spec.format, ("n", "b_degree", "gamma_degree", "coeff", "monomial"), rows, meta, out)
        return 0

    if spec.command == "eval":
        rows = evaluate(spec.center, spec.b, spec.p, order, spec.a_values, spec.oracle)
        _emit(spec.format, ("a", "phi_approx", "q_approx"), rows, meta, out)
        return 0

    if spec.command == "compare":
        reports = compare(spec.center, spec.b, spec.p, order, spec.a_values, spec.oracle)
        header = ("a", "approx", "oracle", "abs_error", "scaled_error")
        rows = [tuple(r.as_dict()[h] for h in header) for r in reports]
        _emit(spec.format, header, rows, meta, out)
        return 0

    # identities
    report = check_norlund_bell_identity(order)
    header = ("n", "bell_form", "ratio_form", "reflected_outer", "reflected_grouped", "pass")
    rows = [
        (r.n, r.bell_form, r.ratio_form, r.reflected_outer, r.reflected_grouped, r.passed)
        for r in report
    ]
    _emit(spec.format, header, rows, meta, out)
    failed = [r.n for r in report if not r.passed]
    if failed:
        print(f"error: identity check failed for n = {failed}", file=sys.stderr)
        return 1
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="betaquantile",
        description="Asymptotic expansions of the Beta-distribution quantile in its first parameter.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, bp=False, a=False):
        if bp:
            p.add_argument("--b", type=float, required=True, help="second Beta parameter")
            p.add_argument("--p", type=float, required=True, help="quantile level in (0, 1)")
        if a:
            p.add_argument("--center", choices=CENTERS, required=True)
            p.add_argument("--a", type=float, nargs="+", action="extend", required=True, dest="a_values")
        p.add_argument("--order", type=int, default=None)
        p.add_argument("--format", choices=FORMATS, default="csv")
        if bp:
            p.add_argument("--x-tol", type=float, default=OracleConfig.x_tolerance)
            p.add_argument("--f-tol", type=float, default=OracleConfig.f_tolerance)
            p.add_argument("--max-iter", type=int, default=OracleConfig.max_iterations)

    common(sub.add_parser("coeffs-zero", help="derivative coefficients of phi at a = 0"), bp=True)
    common(sub.add_parser("coeffs-inf", help="coefficients of 1/a^n in phi at infinity"), bp=True)
    common(sub.add_parser("phi-coeff-symbolic", help="phi_n as polynomials in b and gamma_b"))
    common(sub.add_parser("eval", help="evaluate phi and q approximations"), bp=True, a=True)
    common(sub.add_parser("compare", help="compare an approximation with the oracle"), bp=True, a=True)
    common(sub.add_parser("identities", help="check the Bell/Norlund identities"))
    return parser


def spec_from_args(args):
    oracle = OracleConfig()
    if hasattr(args, "x_tol"):
        oracle = OracleConfig(args.x_tol, args.f_tol, args.max_iter)
    return RunSpec(
        command=args.command,
        b=getattr(args, "b", None),
        p=getattr(args, "p", None),
        order=args.order,
        a_values=tuple(getattr(args, "a_values", None) or ()),
        center=getattr(args, "center", None),
        format=args.format,
        oracle=oracle,
    )


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = spec_from_args(args)
        return run(spec)
    except UsageError as exc:
        parser.error(str(exc))
    except (DomainError, ConvergenceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
