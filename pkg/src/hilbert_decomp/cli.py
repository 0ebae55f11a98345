"""Command line front end.

Exit status: 0 success, 1 invalid input, 2 precondition violation,
3 obstruction certificate found (``check`` only).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction
from typing import Sequence

from .decompose import (
    Decomposition,
    Verdict,
    decompose_integral_2var,
    decompose_rational,
    scale_to_realizable,
    verify_decomposition,
)
from .errors import ParseError, PreconditionError
from .obstruction import (
    SupportClosureCertificate,
    build_counterexample,
    explain_leading_coeff,
    explain_support_closure,
)
from .parsing import format_series, parse_series
from .quasipoly import quasipoly_extract
from .series import DenominatorSpec, LaurentPolynomial, RationalSeries

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PRECONDITION = 2
EXIT_OBSTRUCTED = 3


class InputError(Exception):
    pass


# -- JSON helpers ------------------------------------------------------------

def fraction_to_json(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def fraction_from_json(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise InputError(f"rationals must be 'a/b' strings, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {s!r}") from exc


def laurent_to_json(p: LaurentPolynomial) -> dict[str, str]:
    return {str(k): fraction_to_json(c) for k, c in p.items()}


def laurent_from_json(d) -> LaurentPolynomial:
    if not isinstance(d, dict):
        raise InputError("numerator must be an object mapping exponents to rationals")
    try:
        return LaurentPolynomial({int(k): fraction_from_json(v) for k, v in d.items()})
    except ValueError as exc:
        raise InputError(f"bad exponent in numerator: {exc}") from exc


def decomposition_to_json(D: Decomposition) -> dict:
    return {
        "lambda": fraction_to_json(D.scalar),
        "terms": [
            {"denominator_degrees": list(I), "numerator": laurent_to_json(num)}
            for I, num in D.terms
        ],
    }


def decomposition_from_json(data) -> Decomposition:
    if not isinstance(data, dict) or "terms" not in data:
        raise InputError("decomposition JSON needs a 'terms' list")
    terms = []
    for t in data["terms"]:
        try:
            degrees = [int(d) for d in t["denominator_degrees"]]
            num = laurent_from_json(t["numerator"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed term {t!r}") from exc
        if any(d < 1 for d in degrees):
            raise InputError(f"denominator degrees must be positive: {degrees}")
        terms.append((tuple(degrees), num))
    scalar = fraction_from_json(data.get("lambda", "1"))
    if scalar <= 0:
        raise InputError("lambda must be positive")
    return Decomposition(tuple(terms), scalar)


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return fraction_to_json(obj)
    if dataclasses.is_dataclass(obj):
        out = {"type": type(obj).__name__}
        out.update({f.name: _jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)})
        return out
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    return obj


# -- commands ----------------------------------------------------------------

def _read_expr(expr: str, stdin) -> RationalSeries:
    if expr == "-":
        expr = stdin.read()
    return parse_series(expr.strip())


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError as exc:
        raise InputError(f"expected a list of integers, got {text!r}") from exc


def _format_decomposition(D: Decomposition) -> list[str]:
    lines = [f"lambda: {D.scalar}", f"depth: {D.depth}", "terms:"]
    for I, num in D.terms:
        lines.append("  " + format_series(RationalSeries(num, DenominatorSpec(I))))
    return lines


def _format_certificate(cert) -> list[str]:
    if isinstance(cert, SupportClosureCertificate):
        return [
            f"witness residue: {cert.residue} mod {cert.period}",
            f"eventual support: {list(cert.support)}",
            f"successors missing for degrees: {list(cert.missing_successors)}",
        ]
    rep = cert.infeasibility
    return [
        f"leading coefficient c_{cert.degree}: {cert.value}",
        "block values: " + ", ".join(f"{list(I)}: {v}" for I, v in cert.block_values),
        f"knapsack (scaled by {rep.scale}): target {rep.target}, weights {list(rep.weights)}, infeasible",
    ]


def cmd_expand(args, stdin):
    P = _read_expr(args.expr, stdin)
    v = P.valuation
    coeffs = P.expand(args.N) if args.N >= v else []
    if args.json:
        return EXIT_OK, {"start": v, "coefficients": [fraction_to_json(c) for c in coeffs]}
    return EXIT_OK, " ".join(str(c) for c in coeffs)


def cmd_quasi(args, stdin):
    P = _read_expr(args.expr, stdin)
    q = quasipoly_extract(P)
    if args.json:
        return EXIT_OK, {
            "degree": q.degree,
            "period": q.period,
            "threshold": q.threshold,
            "coefficients": [
                {"period": c.period, "values": [fraction_to_json(v) for v in c.values]}
                for c in q.coeffs
            ],
        }
    lines = [f"degree: {q.degree}", f"period: {q.period}", f"threshold: {q.threshold}"]
    for i, c in enumerate(q.coeffs):
        lines.append(f"c_{i}: period {c.period}: [{', '.join(str(v) for v in c.values)}]")
    return EXIT_OK, "\n".join(lines)


def cmd_decompose(args, stdin):
    P = _read_expr(args.expr, stdin)
    if args.integral and args.scale:
        raise InputError("--integral and --scale are mutually exclusive")
    if args.integral:
        D = decompose_integral_2var(P)
    elif args.scale:
        D = scale_to_realizable(P)[1]
    else:
        D = decompose_rational(P)
    verdict = verify_decomposition(P, D)
    if args.json:
        out = {"series": format_series(P), **decomposition_to_json(D)}
        out.update({"depth": D.depth, "verdict": str(verdict)})
        return EXIT_OK, out
    return EXIT_OK, "\n".join([f"series: {format_series(P)}", *_format_decomposition(D), f"verdict: {verdict}"])


def cmd_check(args, stdin):
    P = _read_expr(args.expr, stdin)
    q = quasipoly_extract(P)
    results = [
        ("leading-coefficient", *explain_leading_coeff(P, q)),
        ("support-closure", *explain_support_closure(P, q)),
    ]
    fired = any(cert is not None for _, cert, _ in results)
    status = EXIT_OBSTRUCTED if fired else EXIT_OK
    if args.json:
        return status, {
            "series": format_series(P),
            "obstructed": fired,
            "checks": [
                {"name": name, "certificate": _jsonable(cert), "reason": reason}
                for name, cert, reason in results
            ],
        }
    lines = [f"series: {format_series(P)}"]
    for name, cert, reason in results:
        lines.append(f"{name}: {'CERTIFICATE' if cert else 'none'} ({reason})")
        if cert is not None:
            lines += ["  " + line for line in _format_certificate(cert)]
    return status, "\n".join(lines)


def cmd_counterexample(args, stdin):
    D = DenominatorSpec(_int_list(args.degrees))
    res = build_counterexample(D, _int_list(args.beta1), _int_list(args.beta2), shift=args.shift)
    if args.json:
        return EXIT_OK, {
            "series": format_series(res.series),
            "lambda": res.multiplier,
            "shift": res.shift,
            "certificate": _jsonable(res.certificate),
        }
    lines = [
        f"series: {format_series(res.series)}",
        f"lambda: {res.multiplier}",
        f"shift: {res.shift}",
        *_format_certificate(res.certificate),
    ]
    return EXIT_OK, "\n".join(lines)


def cmd_verify(args, stdin):
    P = _read_expr(args.expr, stdin)
    try:
        with open(args.decomposition, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read decomposition: {exc}") from exc
    D = decomposition_from_json(data)
    verdict = verify_decomposition(P, D, args.N)
    status = EXIT_OK if verdict in (Verdict.VALID, Verdict.INTEGRAL_VALID) else EXIT_INPUT
    if args.json:
        return status, {"verdict": str(verdict)}
    return status, f"verdict: {verdict}"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(
        prog="hilbert-decomp",
        description="Decompose rational series with denominators prod(1-t^d) into nonnegative parts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="print coefficients up to degree N")
    p.add_argument("-N", type=int, required=True)
    p.add_argument("expr")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("quasi", parents=[common], help="print the coefficient quasipolynomial")
    p.add_argument("expr")
    p.set_defaults(func=cmd_quasi)

    p = sub.add_parser("decompose", parents=[common], help="nonnegative decomposition")
    p.add_argument("expr")
    p.add_argument("--integral", action="store_true", help="integral decomposition (two degrees)")
    p.add_argument("--scale", action="store_true", help="integral decomposition of lambda * P")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("check", parents=[common], help="search for obstruction certificates")
    p.add_argument("expr")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("counterexample", parents=[common], help="build a non-realizable series")
    p.add_argument("--degrees", required=True, help="denominator degrees, e.g. 2,3,5")
    p.add_argument("--beta1", required=True, help="exponent per distinct degree for P1")
    p.add_argument("--beta2", required=True, help="exponent per distinct degree for P2")
    p.add_argument("--shift", type=int, default=None, help="use this shift instead of the smallest one")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("verify", parents=[common], help="verify a decomposition given as JSON")
    p.add_argument("expr")
    p.add_argument("--decomposition", required=True, help="JSON file")
    p.add_argument("-N", type=int, default=200, help="length of the redundant expansion check")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Sequence[str], stdin=None) -> tuple[int, str]:
    """Run one invocation and return ``(exit status, output text)``."""
    stdin = stdin if stdin is not None else sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        # argparse has already written usage or help text to stderr/stdout
        return (EXIT_INPUT if exc.code else EXIT_OK), ""
    want_json = getattr(args, "json", False)
    try:
        status, out = args.func(args, stdin)
    except PreconditionError as exc:
        status, out = EXIT_PRECONDITION, {"error": "precondition violated", "message": str(exc)}
    except (ParseError, InputError, ValueError) as exc:
        status, out = EXIT_INPUT, {"error": "invalid input", "message": str(exc)}
    if isinstance(out, dict):
        if want_json:
            out = json.dumps(out, indent=2)
        elif "error" in out:
            out = f"error: {out['message']}"
    return status, out


def main(argv: Sequence[str] | None = None) -> int:
    status, out = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if status in (EXIT_OK, EXIT_OBSTRUCTED) else sys.stderr
    if out:
        print(out, file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
