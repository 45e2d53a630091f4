"""Command-line front end: bound, extremal, certify, verify, curve, quadratic.

Every command emits an envelope {command, inputs, result, warnings} either
as human-readable text (6 significant digits) or as deterministic JSON
(sorted keys, 17 significant digits, compact separators) with --format
json.  Exit codes: 0 success, 1 verification failure, 2 usage error,
3 domain error, 4 oracle error, 5 I/O error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .bounds import (
    DomainError,
    always_bound,
    bound,
    canonicalize,
    certificate,
    extremal_distribution,
    quadratic_event_bound,
    standardize,
)
from .oracle import (
    DEFAULT_DUAL_STEPS,
    DEFAULT_PRIMAL_STEPS,
    GridSpec,
    OracleError,
    default_grid,
    full_verification,
    monte_carlo_attainment,
    verify_certificate,
)

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_ORACLE = 4
EXIT_IO = 5

DEFAULT_CLOSED_TOL = 1e-9
DEFAULT_ORACLE_TOL = 5e-3
DEFAULT_K_LIST = "1,2,3,4,5,6,inf"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# deterministic serialization

def _json_atom(x):
    if x is None:
        return "null"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        if math.isnan(x):
            return '"nan"'
        if math.isinf(x):
            return '"inf"' if x > 0 else '"-inf"'
        return format(x, ".17g")
    if isinstance(x, str):
        return json.dumps(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(obj) -> str:
    """Compact JSON with sorted keys and fixed 17-significant-digit floats."""
    if isinstance(obj, dict):
        items = ",".join(f"{json.dumps(str(k))}:{dumps(v)}" for k, v in sorted(obj.items()))
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    return _json_atom(obj)


def _fmt6(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return format(x, ".6g")
    return str(x)


def _fmt17(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(float(x), ".17g")


# ---------------------------------------------------------------------------
# argument plumbing

def _real(text):
    try:
        return float(text)  # float() already accepts inf/infinity, any case
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--tol", type=_real, default=DEFAULT_CLOSED_TOL,
                        help="tolerance for closed-form consistency checks (default 1e-9)")
    common.add_argument("--oracle-tol", type=_real, default=DEFAULT_ORACLE_TOL,
                        help="tolerance for grid-oracle gaps (default 5e-3)")

    interval = argparse.ArgumentParser(add_help=False)
    interval.add_argument("--a", type=_real, help="magnitude of the left endpoint ('inf' allowed)")
    interval.add_argument("--b", type=_real, help="right endpoint")
    interval.add_argument("--lower", type=_real, help="lower endpoint of a raw interval")
    interval.add_argument("--upper", type=_real, help="upper endpoint of a raw interval")
    interval.add_argument("--mean", type=_real, help="mean of the raw variable")
    interval.add_argument("--var", type=_real, help="variance of the raw variable")

    parser = argparse.ArgumentParser(
        prog="intervalbound",
        description="Sharp bounds on P(X outside (-a, b)) for zero-mean unit-variance X",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("bound", parents=[common, interval],
                   help="evaluate the sharp bound and its case")
    sub.add_parser("extremal", parents=[common, interval],
                   help="construct the distribution attaining the bound")
    sub.add_parser("certify", parents=[common, interval],
                   help="expand and check the quadratic majorant certificate")

    verify = sub.add_parser("verify", parents=[common, interval],
                            help="run the primal/dual oracles and Monte Carlo attainment")
    verify.add_argument("--grid-lo", type=_real, default=None)
    verify.add_argument("--grid-hi", type=_real, default=None)
    verify.add_argument("--grid-steps", type=int, default=DEFAULT_DUAL_STEPS)
    verify.add_argument("--primal-steps", type=int, default=DEFAULT_PRIMAL_STEPS)
    verify.add_argument("--mc-samples", type=int, default=100_000)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--no-extremal-atoms", action="store_true",
                        help="do not force the closed-form extremal atoms into the primal search")

    curve = sub.add_parser("curve", parents=[common],
                           help="write the bound family P_{k*b,b} as CSV")
    curve.add_argument("--k-list", default=DEFAULT_K_LIST,
                       help="comma-separated asymmetry ratios a/b, each >= 1 or 'inf'")
    curve.add_argument("--b-min", type=_real, default=0.05)
    curve.add_argument("--b-max", type=_real, default=5.0)
    curve.add_argument("--b-steps", type=int, default=200)
    curve.add_argument("--spacing", choices=("linear", "log"), default="linear")
    curve.add_argument("--out", default="curve.csv")

    quadratic = sub.add_parser("quadratic", parents=[common],
                               help="bound P(X^2 + A*X + B >= 0)")
    quadratic.add_argument("--A", type=_real, required=True)
    quadratic.add_argument("--B", type=_real, required=True)
    return parser


def _resolve_interval(args):
    """Interval from --a/--b, or from --lower/--upper/--mean/--var via standardization."""
    raw = [args.lower, args.upper, args.mean, args.var]
    has_raw = any(v is not None for v in raw)
    has_ab = args.a is not None or args.b is not None
    if has_raw and has_ab:
        raise UsageError("give either --a/--b or --lower/--upper/--mean/--var, not both")
    warnings = []
    if has_raw:
        if any(v is None for v in raw):
            raise UsageError("standardized input needs all of --lower --upper --mean --var")
        spec = standardize(args.lower, args.upper, args.mean, args.var)
        inputs = {"lower": args.lower, "upper": args.upper, "mean": args.mean, "var": args.var}
    else:
        if args.a is None or args.b is None:
            raise UsageError("missing --a/--b (or the --lower/--upper/--mean/--var quadruple)")
        spec = canonicalize(args.a, args.b)
        inputs = {"a": args.a, "b": args.b}
    if spec.reflected:
        warnings.append("interval reflected to canonical orientation a >= b")
    return spec, inputs, warnings


# ---------------------------------------------------------------------------
# commands: each returns (envelope, exit_code, text_lines)

def _cmd_bound(args):
    spec, inputs, warnings = _resolve_interval(args)
    res = bound(spec)
    result = {
        "value": res.value,
        "case": res.case.value,
        "a": spec.a,
        "b": spec.b,
        "reflected": spec.reflected,
    }
    lines = [
        f"value      {_fmt6(res.value)}",
        f"case       {res.case.value}",
        f"a          {_fmt6(spec.a)}",
        f"b          {_fmt6(spec.b)}",
        f"reflected  {_fmt6(spec.reflected)}",
    ]
    if math.isfinite(spec.a):
        result["always_bound"] = always_bound(spec)
        lines.append(f"always     {_fmt6(result['always_bound'])}")
    return {"command": "bound", "inputs": inputs, "result": result, "warnings": warnings}, EXIT_OK, lines


def _cmd_extremal(args):
    spec, inputs, warnings = _resolve_interval(args)
    res = bound(spec)
    dist = extremal_distribution(spec)
    result = {
        "atoms": [[x, p] for x, p in dist.atoms],
        "mean": dist.mean(),
        "second_moment": dist.second_moment(),
        "exclusion_mass": dist.exclusion_mass(spec),
        "bound": res.value,
        "case": res.case.value,
    }
    lines = [f"case       {res.case.value}", f"bound      {_fmt6(res.value)}", "atom       mass"]
    lines += [f"{_fmt6(x):<10s} {_fmt6(p)}" for x, p in dist.atoms]
    lines += [
        f"mean            {_fmt6(result['mean'])}",
        f"second_moment   {_fmt6(result['second_moment'])}",
        f"exclusion_mass  {_fmt6(result['exclusion_mass'])}",
    ]
    return {"command": "extremal", "inputs": inputs, "result": result, "warnings": warnings}, EXIT_OK, lines


def _cmd_certify(args):
    spec, inputs, warnings = _resolve_interval(args)
    cert = certificate(spec)
    check = verify_certificate(cert, spec)
    result = {
        "c0": cert.c0,
        "c1": cert.c1,
        "c2": cert.c2,
        "objective": cert.objective,
        "majorizes": check.majorizes,
        "worst_violation": check.worst_violation,
        "worst_point": check.worst_point,
    }
    lines = [
        f"c0               {_fmt6(cert.c0)}",
        f"c1               {_fmt6(cert.c1)}",
        f"c2               {_fmt6(cert.c2)}",
        f"objective        {_fmt6(cert.objective)}",
        f"majorizes        {_fmt6(check.majorizes)}",
        f"worst_violation  {_fmt6(check.worst_violation)}",
    ]
    return {"command": "certify", "inputs": inputs, "result": result, "warnings": warnings}, EXIT_OK, lines


def _cmd_verify(args):
    spec, inputs, warnings = _resolve_interval(args)
    if not math.isfinite(spec.a):
        raise DomainError("verify requires finite a")
    base = default_grid(spec)
    lo = args.grid_lo if args.grid_lo is not None else base.lo
    hi = args.grid_hi if args.grid_hi is not None else base.hi
    grid = GridSpec(lo, hi, args.grid_steps)
    primal_grid = GridSpec(lo, hi, args.primal_steps)
    inputs.update(
        {
            "grid_lo": grid.lo,
            "grid_hi": grid.hi,
            "grid_steps": grid.steps,
            "primal_steps": primal_grid.steps,
            "mc_samples": args.mc_samples,
            "seed": args.seed,
        }
    )
    report = full_verification(
        spec,
        grid=grid,
        primal_grid=primal_grid,
        include_extremal_atoms=not args.no_extremal_atoms,
    )
    mc = monte_carlo_attainment(spec, args.mc_samples, args.seed)
    checks = {
        "primal_gap_in_range": -args.tol <= report.primal_gap <= args.oracle_tol,
        "dual_gap_small": abs(report.dual_gap) <= args.oracle_tol,
        "certificate_majorizes": report.certificate_check.majorizes,
        "z_score_ok": abs(mc.z_score) <= 4.0,
    }
    passed = all(checks.values())
    result = {
        "closed_form": report.closed_form,
        "primal_value": report.primal_value,
        "dual_value": report.dual_value,
        "primal_gap": report.primal_gap,
        "dual_gap": report.dual_gap,
        "primal_support": [[x, p] for x, p in report.primal_support.atoms],
        "certificate": {
            "c0": report.certificate.c0,
            "c1": report.certificate.c1,
            "c2": report.certificate.c2,
            "objective": report.certificate.objective,
            "majorizes": report.certificate_check.majorizes,
            "worst_violation": report.certificate_check.worst_violation,
        },
        "monte_carlo": {
            "empirical": mc.empirical,
            "z_score": mc.z_score,
            "samples": mc.samples,
            "seed": mc.seed,
        },
        "grid": {"lo": grid.lo, "hi": grid.hi, "steps": grid.steps},
        "checks": checks,
        "passed": passed,
    }
    lines = [
        f"closed_form   {_fmt6(report.closed_form)}",
        f"primal_value  {_fmt6(report.primal_value)}",
        f"dual_value    {_fmt6(report.dual_value)}",
        f"primal_gap    {_fmt6(report.primal_gap)}",
        f"dual_gap      {_fmt6(report.dual_gap)}",
        f"mc_empirical  {_fmt6(mc.empirical)}",
        f"mc_z_score    {_fmt6(mc.z_score)}",
    ]
    lines += [f"check {name}: {'pass' if ok else 'FAIL'}" for name, ok in sorted(checks.items())]
    lines.append("overall: pass" if passed else "overall: FAIL")
    envelope = {"command": "verify", "inputs": inputs, "result": result, "warnings": warnings}
    return envelope, EXIT_OK if passed else EXIT_VERIFY_FAIL, lines


def _parse_k_list(text):
    ks = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            k = float(token)
        except ValueError as exc:
            raise UsageError(f"bad k value {token!r}") from exc
        if math.isnan(k) or k < 1.0:
            raise UsageError(f"k must be >= 1 or 'inf', got {token}")
        ks.append(k)
    if not ks:
        raise UsageError("empty --k-list")
    return sorted(set(ks))


def _curve_b_values(b_min, b_max, b_steps, spacing):
    if math.isnan(b_min) or math.isnan(b_max) or b_min <= 0 or b_max <= b_min or math.isinf(b_max):
        raise UsageError(f"need 0 < b-min < b-max (finite), got [{b_min}, {b_max}]")
    if b_steps < 2:
        raise UsageError("need --b-steps >= 2")
    if spacing == "log":
        bs = np.geomspace(b_min, b_max, b_steps)
    else:
        bs = np.linspace(b_min, b_max, b_steps)
    # Force b = 1 into the grid so the family's reference values appear as
    # exact rows; a uniform grid over a generic range misses it.
    if b_min <= 1.0 <= b_max and not np.any(bs == 1.0):
        bs = np.sort(np.append(bs, 1.0))
    return [float(b) for b in bs]


def _cmd_curve(args):
    ks = _parse_k_list(args.k_list)
    bs = _curve_b_values(args.b_min, args.b_max, args.b_steps, args.spacing)
    rows = []
    for b in bs:
        for k in ks:
            spec = canonicalize(k * b, b)
            res = bound(spec)
            rows.append((b, k, res.value, res.case.value))
    text = "b,k,bound,case\n" + "\n".join(
        f"{_fmt17(b)},{_fmt17(k)},{_fmt17(v)},{case}" for b, k, v, case in rows
    ) + "\n"
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    inputs = {
        "k_list": ks,
        "b_min": args.b_min,
        "b_max": args.b_max,
        "b_steps": args.b_steps,
        "spacing": args.spacing,
        "out": args.out,
    }
    result = {"path": args.out, "rows": len(rows), "b_count": len(bs)}
    lines = [f"wrote {args.out} ({len(rows)} rows, {len(bs)} b values, {len(ks)} k values)"]
    return {"command": "curve", "inputs": inputs, "result": result, "warnings": []}, EXIT_OK, lines


def _cmd_quadratic(args):
    res = quadratic_event_bound(args.A, args.B)
    warnings = []
    if not res.sharp:
        warnings.append("bound is valid but not sharp: the interval between the roots does not contain 0")
    result = {
        "value": res.value,
        "tag": res.tag,
        "roots": list(res.roots) if res.roots is not None else None,
    }
    lines = []
    if res.roots is not None:
        lines.append(f"roots      {_fmt6(res.roots[0])}, {_fmt6(res.roots[1])}")
    if res.reduced is not None:
        result["a"] = res.reduced.interval.a
        result["b"] = res.reduced.interval.b
        result["case"] = res.reduced.case.value
        lines.append(f"a          {_fmt6(res.reduced.interval.a)}")
        lines.append(f"b          {_fmt6(res.reduced.interval.b)}")
        lines.append(f"case       {res.reduced.case.value}")
    lines.append(f"value      {_fmt6(res.value)}")
    lines.append(f"tag        {res.tag}")
    inputs = {"A": args.A, "B": args.B}
    return {"command": "quadratic", "inputs": inputs, "result": result, "warnings": warnings}, EXIT_OK, lines


_COMMANDS = {
    "bound": _cmd_bound,
    "extremal": _cmd_extremal,
    "certify": _cmd_certify,
    "verify": _cmd_verify,
    "curve": _cmd_curve,
    "quadratic": _cmd_quadratic,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles --help and usage errors
        return int(exc.code or 0)
    try:
        envelope, code, lines = _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OracleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.format == "json":
        print(dumps(envelope))
    else:
        for line in lines:
            print(line)
        for warning in envelope["warnings"]:
            print(f"warning: {warning}")
    return code


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
