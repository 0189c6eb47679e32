"""Command-line front end.  Every command prints exactly one JSON document
on standard output (diagnostics go to standard error) and exits with
0 on success, 2 on parse errors, 3 on domain errors, 4 on internal errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import oracle
from .algebraic import INFINITY, FieldElement, QContext, make_context
from .cf import (
    RosenCF,
    convergence_estimate,
    convergents,
    enumerate_geodesic_expansions,
    evaluate,
    fibonacci,
    find_forbidden,
    format_cf,
    infinite_convergents,
    is_geodesic,
    nearest_integer_expansion,
    parse_cf,
    parse_coeff_body,
    reduce_to_geodesic,
)
from .errors import InternalError, ParseError, RosenError
from .farey import Vertex, chain_length_D, q_chain
from .moebius import BoundaryPoint
from .render import render_chain_svg, render_path_svg

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_INTERNAL = 0, 2, 3, 4


def _q_str(ctx: QContext):
    return "inf" if ctx.q == INFINITY else ctx.q


def _decimal_str(value: FieldElement, bits: int) -> str:
    lo, hi = value.approximate(bits)
    digits = max(1, int(bits * 0.30103) - 1)
    mid = (lo + hi) / 2
    scaled = round(mid * 10**digits)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{str(frac).zfill(digits)}"


def _radical_str(value: FieldElement):
    ctx = value.ctx
    if ctx.degree == 1:
        return str(value.as_rational())
    if ctx.degree != 2:
        return None
    p, disc = ctx.min_poly[1], ctx.min_poly[1] ** 2 - 4 * ctx.min_poly[0]
    a, b = value.coeffs  # a + b*lambda, lambda = (-p + sqrt(disc)) / 2
    u = a - b * Fraction(p, 2)
    v = b / 2
    if not v:
        return str(u)
    root = f"sqrt({disc})" if abs(v) == 1 else f"{abs(v)}*sqrt({disc})"
    if not u:
        return root if v > 0 else f"-{root}"
    return f"{u} {'+' if v > 0 else '-'} {root}"


def _point_json(point: BoundaryPoint, bits: int):
    if point.is_infinity:
        return "inf"
    out = {
        "coeffs": [str(c) for c in point.value.coeffs],
        "decimal": _decimal_str(point.value, bits),
        "precision_bits": bits,
    }
    radical = _radical_str(point.value)
    if radical is not None:
        out["radical"] = radical
    return out


def _parse_context_arg(text: str) -> QContext:
    t = text.strip().lower()
    if t.startswith("q="):
        t = t[2:].strip()
    if t in ("inf", "infinity"):
        return make_context(INFINITY)
    try:
        return make_context(int(t))
    except ValueError:
        raise ParseError(f"bad context {text!r}") from None


def _parse_target(ctx: QContext, text: str) -> Vertex:
    t = text.strip()
    if t.startswith("q="):
        c = parse_cf(t)
        if c.ctx is not ctx:
            raise ParseError("target context differs from the command context")
        return Vertex(evaluate(c))
    if t.startswith("["):
        return Vertex(evaluate(parse_coeff_body(ctx, t)))
    if t.startswith("("):
        if not t.endswith(")"):
            raise ParseError("unterminated coordinate literal", len(t))
        coeffs = [Fraction(part.strip()) for part in t[1:-1].split(",")]
        return Vertex.from_value(FieldElement.from_coeffs(ctx, coeffs))
    try:
        return Vertex.from_rational(ctx, Fraction(t))
    except ValueError:
        raise ParseError(f"bad target {text!r}") from None


def _finite(cf: RosenCF) -> RosenCF:
    if not cf.is_finite:
        raise ParseError("this command needs a finite expansion")
    return cf


# ----------------------------------------------------------------------
# commands; each returns the outputs dict

def cmd_eval(args, bits):
    cf = _finite(parse_cf(args.cf))
    value = evaluate(cf)
    path = convergents(cf)
    return cf.ctx, {
        "value": _point_json(value, bits),
        "convergents": [_point_json(v.point, bits) for v in path.vertices[1:]],
    }


def cmd_expand(args, bits):
    ctx = _parse_context_arg(args.context)
    y = _parse_target(ctx, args.target)
    e = nearest_integer_expansion(y)
    d = oracle.distance(Vertex.infinity(ctx), y)
    return ctx, {
        "expansion": list(e.coeffs),
        "length": len(e.coeffs),
        "distance": d,
        "value": _point_json(y.point, bits),
    }


def cmd_check(args, bits):
    cf = _finite(parse_cf(args.cf))
    geo = is_geodesic(cf)
    out = {"coeffs": list(cf.coeffs), "geodesic": geo}
    if not geo and cf.ctx.q != 3:
        occ = find_forbidden(cf.ctx, cf.coeffs)
        if occ is not None:
            out["reason"] = f"pattern {occ.pattern(cf.coeffs)} at index {occ.start}"
    if args.oracle:
        out["oracle_geodesic"] = oracle.is_geodesic_oracle(cf)
        out["agrees"] = out["oracle_geodesic"] == geo
    return cf.ctx, out


def cmd_reduce(args, bits):
    cf = _finite(parse_cf(args.cf))
    red = reduce_to_geodesic(cf)
    out = {
        "input": list(cf.coeffs),
        "reduced": list(red.coeffs),
        "length": len(red.coeffs),
        "value": _point_json(evaluate(red), bits),
    }
    if args.oracle:
        out["distance"] = oracle.distance(Vertex.infinity(cf.ctx), Vertex(evaluate(red)))
        out["agrees"] = out["distance"] == len(red.coeffs)
    return cf.ctx, out


def cmd_enumerate(args, bits):
    ctx = _parse_context_arg(args.context)
    y = _parse_target(ctx, args.target)
    expansions = enumerate_geodesic_expansions(y)
    if ctx.q == INFINITY:
        bound = 1
    else:
        n = chain_length_D(Vertex.infinity(ctx), y)
        bound = fibonacci(n)
    out = {
        "value": _point_json(y.point, bits),
        "count": len(expansions),
        "bound": bound,
        "expansions": [list(e.coeffs) for e in expansions],
    }
    if args.oracle and ctx.q != INFINITY:
        out["oracle_count"] = len(oracle.all_geodesic_paths(Vertex.infinity(ctx), y))
        out["agrees"] = out["oracle_count"] == out["count"]
    return ctx, out


def cmd_chain(args, bits):
    ctx = _parse_context_arg(args.context)
    y = _parse_target(ctx, args.target)
    x = Vertex.infinity(ctx)
    out = {"D": chain_length_D(x, y)}
    if out["D"] >= 2:
        chain = q_chain(x, y)
        out["chain"] = chain.to_json()
        out["faces"] = len(chain)
        if args.svg:
            with open(args.svg, "w") as fh:
                fh.write(render_chain_svg(chain))
            out["svg"] = args.svg
    return ctx, out


def cmd_distance(args, bits):
    ctx = _parse_context_arg(args.context)
    y = _parse_target(ctx, args.target)
    x = Vertex.infinity(ctx) if args.source is None else _parse_target(ctx, args.source)
    return ctx, {"distance": oracle.distance(x, y)}


def cmd_limit(args, bits):
    cf = parse_cf(args.cf)
    tol = _sci_to_fraction(args.tol)
    report = convergence_estimate(cf, tol, max_n=args.max_n)
    out = {
        "converged": report.converged,
        "diverged_flag": report.diverged,
        "terms_used": report.terms_used,
        "repeated_convergent": list(report.repeated_convergent) if report.repeated_convergent else None,
    }
    if report.interval is not None:
        lo, hi = report.interval
        out["interval"] = [str(lo), str(hi)]
        mid = (lo + hi) / 2
        out["decimal"] = f"{float(mid):.12g}"
    return cf.ctx, out


def cmd_render(args, bits):
    cf = _finite(parse_cf(args.cf))
    path = convergents(cf)
    svg = render_path_svg(cf.ctx, [v.point for v in path.vertices])
    target = args.svg or "path.svg"
    with open(target, "w") as fh:
        fh.write(svg)
    return cf.ctx, {"svg": target, "vertices": len(path)}


def _sci_to_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError:
        from decimal import Decimal

        return Fraction(Decimal(text))


# ----------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rosen",
        description="Exact Rosen continued fractions as paths in Farey graphs.",
    )
    parser.add_argument("--precision-bits", type=int, default=53, help="bits for decimal rendering")
    parser.add_argument("--json", action="store_true", help="accepted for compatibility; output is always JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a finite expansion")
    p.add_argument("cf", help="e.g. \"q=5 [1,2,-1]\"")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("expand", help="nearest-integer expansion of a target")
    p.add_argument("context", help="e.g. \"q=3\" or \"inf\"")
    p.add_argument("target", help="rational \"5/7\", coordinates \"(1/2,3)\", or \"[2,1,1]\"")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("check", help="test whether an expansion is geodesic")
    p.add_argument("cf")
    p.add_argument("--oracle", action="store_true", help="cross-check against the length oracle")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("reduce", help="rewrite an expansion to geodesic form")
    p.add_argument("cf")
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("enumerate", help="all geodesic expansions of a target")
    p.add_argument("context")
    p.add_argument("target")
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("chain", help="face chain from infinity to a target")
    p.add_argument("context")
    p.add_argument("target")
    p.add_argument("--svg", metavar="OUT", help="write a disc-model figure")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("distance", help="graph distance from infinity (or --from) to a target")
    p.add_argument("context")
    p.add_argument("target")
    p.add_argument("--from", dest="source", default=None, help="alternate source vertex")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("limit", help="convergence estimate for an infinite expansion")
    p.add_argument("cf", help="periodic form, e.g. \"q=4 [2;(2)]\"")
    p.add_argument("--tol", default="1e-9")
    p.add_argument("--max-n", type=int, default=1000)
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("render", help="SVG of the path of convergents")
    p.add_argument("cf")
    p.add_argument("--svg", metavar="OUT", help="output file (default path.svg)")
    p.set_defaults(func=cmd_render)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors already
        return int(exc.code or 0)
    started = time.perf_counter()
    try:
        ctx, outputs = args.func(args, args.precision_bits)
        result = {
            "command": args.command,
            "q": _q_str(ctx),
            "inputs": {
                k: v for k, v in vars(args).items()
                if k in ("cf", "context", "target", "source", "tol", "max_n") and v is not None
            },
            "outputs": outputs,
            "timing_ms": round((time.perf_counter() - started) * 1000.0, 3),
        }
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (RosenError, ZeroDivisionError, ValueError) as exc:
        if isinstance(exc, InternalError):
            print(f"internal error: {exc}", file=sys.stderr)
            return EXIT_INTERNAL
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except Exception as exc:  # pragma: no cover - safety net
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    json.dump(result, sys.stdout, indent=2)
    print()
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
