"""Command-line front end.

Subcommands map one-to-one onto the engines:

    expand     exact expansion coefficients of a catalog mean (or of the
               stable fixed-point series for a given t^2 coefficient)
    resultant  exact expansion of R(K, M, N)
    stable     stability check M vs R(M, M, M)
    solve      optimal power-mean parameters and stabilizability verdict
    compare    float comparison scan of two means on a grid
    limit      boundary limit at (s, 1-s), s -> 0
    verify     remainder-decay check of a truncated expansion

All parameters are exact fractions ("num/den"); decimal input is rejected so
nothing lossy crosses into the exact layer.  Reports go to stdout as JSON
(default) or a plain table; diagnostics go to stderr.  Exit codes: 0 success,
1 engine error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .catalog import (
    ALIASES,
    ClassicMean,
    LAlpha,
    MAlphaR,
    MeanExpansion,
    MeanSpec,
    PowerMean,
    SAlpha,
    describe_spec,
    expand_mean,
    expand_stable,
)
from .numeric import GridSpec, boundary_limit, compare_scan, verify_expansion_decay
from .polynomials import (
    QuadraticSurdRoot,
    RationalRoot,
    Root,
)
from .rationals import Rational, format_rational, parse_rational
from .resultant import ResultantInput, resultant_expansion
from .solver import is_stable, optimal_parameters, stability_parameter_scan

SCHEMA = "1"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# JSON encoding helpers


def _rat_json(value: Rational) -> dict:
    return {"num": value.numerator, "den": value.denominator}


def _float_json(value: float | None, provenance: str) -> dict | None:
    if value is None:
        return None
    return {"value": value, "provenance": provenance}


def _root_json(root: Root) -> dict:
    if isinstance(root, RationalRoot):
        return {"kind": root.kind, "value": _rat_json(root.value)}
    if isinstance(root, QuadraticSurdRoot):
        return {
            "kind": root.kind,
            "add": _rat_json(root.add),
            "sign": root.sign,
            "radicand": _rat_json(root.radicand),
            "div": _rat_json(root.div),
            "approx": _float_json(root.approx(), "float64"),
        }
    return {
        "kind": root.kind,
        "low": _rat_json(root.low),
        "high": _rat_json(root.high),
        "approx": _float_json(root.approx(), "float64"),
    }


def _leading_json(leading) -> dict | None:
    if leading is None:
        return None
    if isinstance(leading, Fraction):
        return {"exact": _rat_json(leading)}
    return {
        "certified_enclosure": {
            "low": _rat_json(leading.low),
            "high": _rat_json(leading.high),
        },
        "sign": leading.sign,
    }


def _expansion_json(expansion: MeanExpansion) -> dict:
    return {
        "order": expansion.order,
        "parity": expansion.parity,
        "coefficients": [
            {"t_power": n, "x_power": 1 - n, **_rat_json(c)}
            for n, c in enumerate(expansion.coeffs)
        ],
    }


def _expansion_table(expansion: MeanExpansion) -> str:
    lines = [f"{'t^n':>5}  {'x^(1-n)':>8}  coefficient"]
    for n, c in enumerate(expansion.coeffs):
        lines.append(f"{n:>5}  {1 - n:>8}  {format_rational(c)}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Mean spec parsing


def _build_spec(args: argparse.Namespace, which: str = "mean") -> MeanSpec:
    name = getattr(args, which, None)
    if name is None:
        raise UsageError(f"--{which} is required")
    return parse_mean_spec(
        name,
        alpha=getattr(args, "alpha", None),
        r=getattr(args, "r", None),
        p=getattr(args, "power", None),
    )


def parse_mean_spec(
    name: str,
    alpha: str | None = None,
    r: str | None = None,
    p: str | None = None,
) -> MeanSpec:
    """Resolve a mean name plus optional exact parameters into a spec."""
    key = name.strip()
    upper = key.upper()
    if upper in ALIASES:
        return ALIASES[upper]
    if upper in ("HZ14", "HEINZ"):
        return ALIASES["HZ1/4"]
    if upper in ("M1", "M2", "M3", "M4", "M5"):
        return ClassicMean(int(upper[1]))
    lower = key.lower()
    if lower in ("b", "powermean", "power-mean", "power"):
        if p is None:
            raise UsageError("power mean needs --p num/den")
        return PowerMean(parse_rational(p))
    if lower in ("lalpha", "l_alpha"):
        if alpha is None:
            raise UsageError("Lalpha needs --alpha num/den")
        return LAlpha(parse_rational(alpha))
    if lower in ("salpha", "s_alpha"):
        if alpha is None:
            raise UsageError("Salpha needs --alpha num/den")
        return SAlpha(parse_rational(alpha))
    if lower in ("malphar", "m_alphar", "m_alpha_r"):
        if alpha is None or r is None:
            raise UsageError("Malphar needs --alpha and --r")
        return MAlphaR(parse_rational(alpha), parse_rational(r))
    raise UsageError(f"unknown mean {name!r}")


# ---------------------------------------------------------------------------
# Subcommand handlers (each returns the JSON-able report dict)


def _cmd_expand(args: argparse.Namespace) -> dict:
    if args.mean.strip().lower() == "stable":
        if args.a2 is None:
            raise UsageError("the stable series needs --a2 num/den")
        expansion = expand_stable(parse_rational(args.a2), args.order)
        label = f"stable(a2={args.a2})"
    else:
        spec = _build_spec(args)
        expansion = expand_mean(spec, args.order)
        label = describe_spec(spec)
    return {"command": "expand", "mean": label, **_expansion_json(expansion)}


def _cmd_resultant(args: argparse.Namespace) -> dict:
    middle = _build_spec(args)
    if args.outer is not None:
        outer = parse_mean_spec(args.outer)
        inner = parse_mean_spec(args.inner) if args.inner else outer
    elif args.p is not None and args.q is not None:
        outer = PowerMean(parse_rational(args.p))
        inner = PowerMean(parse_rational(args.q))
    else:
        raise UsageError("give either --outer/--inner names or --p/--q powers")
    inp = ResultantInput(
        expand_mean(outer, args.order),
        expand_mean(middle, args.order),
        expand_mean(inner, args.order),
        args.order,
    )
    expansion = resultant_expansion(inp)
    return {
        "command": "resultant",
        "outer": describe_spec(outer),
        "middle": describe_spec(middle),
        "inner": describe_spec(inner),
        "case": inp.case,
        **_expansion_json(expansion),
    }


def _cmd_stable(args: argparse.Namespace) -> dict:
    spec = _build_spec(args)
    report = is_stable(spec, args.order)
    out: dict = {
        "command": "stable",
        "mean": report.description,
        "order": report.order,
        "stable_to_order": report.is_stable,
    }
    if not report.is_stable:
        out["first_mismatch"] = report.first_mismatch
        out["defect"] = _rat_json(report.defect)
    return out


def _cmd_solve(args: argparse.Namespace) -> dict:
    spec = _build_spec(args)
    mean = expand_mean(spec, args.max_order)
    verdict = optimal_parameters(mean, args.max_order, spec=spec)
    out: dict = {
        "command": "solve",
        "mean": describe_spec(spec),
        "max_order": args.max_order,
        "relation": verdict.relation,
        "notes": list(verdict.notes),
    }
    if verdict.locus is not None:
        out["locus"] = {
            "q_intercept": _rat_json(verdict.locus.intercept),
            "q_slope": _rat_json(verdict.locus.slope),
            "describe": verdict.locus.describe(),
        }
    if verdict.fixed_leading is not None:
        out["fixed_leading"] = {
            "t_power": verdict.fixed_leading_order,
            **_rat_json(verdict.fixed_leading),
        }
    out["candidates"] = [
        {
            "p": _root_json(c.p),
            "q": _root_json(c.q),
            "first_nonzero_order": c.achieved_order,
            "leading": _leading_json(c.leading),
        }
        for c in verdict.candidates
    ]
    if verdict.boundary is not None:
        provenance = verdict.boundary.label
        out["boundary"] = {
            "mean_limit": _float_json(verdict.boundary.mean_limit, provenance),
            "resultant_limit": _float_json(verdict.boundary.resultant_limit, provenance),
        }
    return out


def _cmd_scan(args: argparse.Namespace) -> dict:
    roots = stability_parameter_scan(args.family, args.order)
    return {
        "command": "scan",
        "family": args.family,
        "order": args.order,
        "stable_parameters": [_root_json(r) for r in roots],
    }


def _cmd_compare(args: argparse.Namespace) -> dict:
    m1 = parse_mean_spec(args.m1)
    m2 = parse_mean_spec(args.m2)
    grid = GridSpec(args.x_min, args.x_max, args.count, args.scale)
    report = compare_scan(m1, m2, grid)
    return {
        "command": "compare",
        "m1": describe_spec(m1),
        "m2": describe_spec(m2),
        "verdict": report.verdict,
        "min_gap": _float_json(report.min_gap, "float64"),
        "witnesses": [list(w) for w in report.witnesses],
    }


def _cmd_limit(args: argparse.Namespace) -> dict:
    middle = _build_spec(args)
    if args.p is not None and args.q is not None:
        expr: object = (
            PowerMean(parse_rational(args.p)),
            middle,
            PowerMean(parse_rational(args.q)),
        )
        label = f"R(B_{args.p}, {describe_spec(middle)}, B_{args.q})"
    else:
        expr = middle
        label = describe_spec(middle)
    report = boundary_limit(expr)
    return {
        "command": "limit",
        "expression": label,
        "limit": _float_json(report.value, report.method),
        "uncertainty": report.uncertainty,
    }


def _cmd_verify(args: argparse.Namespace) -> dict:
    spec = _build_spec(args)
    grid = GridSpec(args.x_min, args.x_max, args.count, "logarithmic")
    report = verify_expansion_decay(spec, args.order, args.t, grid)
    return {
        "command": "verify",
        "mean": describe_spec(spec),
        "order": args.order,
        "t": args.t,
        "slope": report.slope,
        "expected_exponent": report.expected_exponent,
        "points_used": report.points_used,
        "noise_floor": report.noise_floor,
        "exact": report.exact,
    }


# ---------------------------------------------------------------------------
# Argument parser


def _add_common_arguments(sub: argparse.ArgumentParser) -> None:
    # Accepted after the subcommand as well; SUPPRESS keeps a value parsed
    # before the subcommand intact when the flag is not repeated.
    sub.add_argument(
        "--format", choices=("json", "table"), default=argparse.SUPPRESS
    )
    sub.add_argument("--out", default=argparse.SUPPRESS)


def _add_mean_arguments(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--mean", required=True, help="mean name (A,G,H,L,P,T,HZ1/4,M1..M5,powermean,Lalpha,Salpha,Malphar,stable)")
    sub.add_argument("--alpha", help="exact fraction for Lalpha/Salpha/Malphar")
    sub.add_argument("--r", help="exact fraction for Malphar")
    sub.add_argument("--power", "--p-value", dest="power", help="exact fraction p for powermean")
    sub.add_argument("--a2", help="t^2 coefficient for the stable series")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meanstab",
        description="exact asymptotic expansions and power-mean stabilizability of bivariate means",
    )
    parser.add_argument("--format", choices=("json", "table"), default="json")
    parser.add_argument("--out", help="write the JSON report to a file as well")
    subs = parser.add_subparsers(dest="subcommand", required=True)

    sub = subs.add_parser("expand", help="exact expansion coefficients")
    _add_common_arguments(sub)
    _add_mean_arguments(sub)
    sub.add_argument("--order", type=int, default=8)
    sub.set_defaults(handler=_cmd_expand)

    sub = subs.add_parser("resultant", help="expansion of R(K, M, N)")
    _add_common_arguments(sub)
    _add_mean_arguments(sub)
    sub.add_argument("--outer", help="outer mean K by name")
    sub.add_argument("--inner", help="inner mean N by name")
    sub.add_argument("--p", help="outer power-mean parameter (exact fraction)")
    sub.add_argument("--q", help="inner power-mean parameter (exact fraction)")
    sub.add_argument("--order", type=int, default=8)
    sub.set_defaults(handler=_cmd_resultant)

    sub = subs.add_parser("stable", help="compare a mean with R(M, M, M)")
    _add_common_arguments(sub)
    _add_mean_arguments(sub)
    sub.add_argument("--order", type=int, default=8)
    sub.set_defaults(handler=_cmd_stable)

    sub = subs.add_parser("solve", help="optimal power-mean parameters")
    _add_common_arguments(sub)
    _add_mean_arguments(sub)
    sub.add_argument("--max-order", type=int, default=8)
    sub.set_defaults(handler=_cmd_solve)

    sub = subs.add_parser("scan", help="stable parameters within a family")
    _add_common_arguments(sub)
    sub.add_argument("--family", required=True, help="Lalpha or Salpha")
    sub.add_argument("--order", type=int, default=16)
    sub.set_defaults(handler=_cmd_scan)

    sub = subs.add_parser("compare", help="comparison scan of two means")
    _add_common_arguments(sub)
    sub.add_argument("--m1", required=True)
    sub.add_argument("--m2", required=True)
    sub.add_argument("--x-min", type=float, default=0.001)
    sub.add_argument("--x-max", type=float, default=10.0)
    sub.add_argument("--count", type=int, default=10000)
    sub.add_argument("--scale", choices=("linear", "logarithmic"), default="linear")
    sub.set_defaults(handler=_cmd_compare)

    sub = subs.add_parser("limit", help="boundary limit at (s, 1-s)")
    _add_common_arguments(sub)
    _add_mean_arguments(sub)
    sub.add_argument("--p", help="outer power for a resultant limit")
    sub.add_argument("--q", help="inner power for a resultant limit")
    sub.set_defaults(handler=_cmd_limit)

    sub = subs.add_parser("verify", help="remainder-decay slope check")
    _add_common_arguments(sub)
    _add_mean_arguments(sub)
    sub.add_argument("--order", type=int, default=4)
    sub.add_argument("--t", type=float, default=10.0)
    sub.add_argument("--x-min", type=float, default=100.0)
    sub.add_argument("--x-max", type=float, default=100000.0)
    sub.add_argument("--count", type=int, default=40)
    sub.set_defaults(handler=_cmd_verify)

    return parser


def _render_table(report: dict) -> str:
    if "coefficients" in report:
        header = [f"{k}: {v}" for k, v in report.items() if k not in ("coefficients",)]
        rows = [f"{'t^n':>5}  {'x^(1-n)':>8}  coefficient"]
        for c in report["coefficients"]:
            frac = Fraction(c["num"], c["den"])
            rows.append(f"{c['t_power']:>5}  {c['x_power']:>8}  {format_rational(frac)}")
        return "\n".join(header + rows)
    return "\n".join(f"{k}: {json.dumps(v)}" for k, v in report.items())


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, ZeroDivisionError) as exc:
        error_obj = {"schema": SCHEMA, "error": {"type": type(exc).__name__, "message": str(exc)}}
        print(json.dumps(error_obj))
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report = {"schema": SCHEMA, **report}
    if args.format == "json":
        text = json.dumps(report, indent=2)
    else:
        text = _render_table(report)
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(report, indent=2) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
