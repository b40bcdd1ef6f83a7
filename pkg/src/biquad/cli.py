"""Command-line front end; every command emits one JSON report."""

from __future__ import annotations

import argparse
import json
import sys

from .bipoly import BiPoly, DegreeTooSmall
from .classify import (
    NonIntegralGenus,
    TheoremViolation,
    certify,
    check_order_bound,
    classify_corner_case,
    default_max_conductor,
    enumerate_diagonal_auts,
    enumerate_swap_auts,
    fixed_point_count,
    galois_criterion,
    group_structure,
    order_menu,
    quotient_genus,
)
from .families import CLI_NAMES, FamilySpec, ParamZero, NotCoprime, validate_family
from .parser import NotBihomogeneous, ParseError, parse_automorphism, parse_bipoly, parse_scalar
from .smooth import corner_report, genus, is_smooth
from .sweep import run_sweep

SCHEMA = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        lo_i, hi_i = int(lo), int(hi if sep else lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo..hi, got {text!r}") from None
    if lo_i > hi_i:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo_i, hi_i


def _add_poly_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--poly", help="polynomial text")
    p.add_argument("--file", help="UTF-8 file holding one polynomial")


def _read_poly(args) -> tuple[str, BiPoly]:
    if args.poly is not None:
        text = args.poly
    elif args.file is not None:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(str(exc)) from None
    else:
        text = sys.stdin.read()
    text = text.strip()
    return text, parse_bipoly(text).poly


def _require_smooth(F: BiPoly) -> None:
    verdict = is_smooth(F)
    if not verdict.smooth:
        raise UsageError(f"curve is singular ({verdict.witness.describe()})")


def _certificate_entry(F: BiPoly, cert, violations: list) -> dict:
    entry = cert.to_json()
    entry["order_bound_ok"] = check_order_bound(cert, F.a, F.b)
    if not entry["order_bound_ok"]:
        violations.append({"reason": f"order {cert.order} outside the admissible menu", **cert.to_json()})
    try:
        entry["classification"] = classify_corner_case(F, cert).to_json()
    except TheoremViolation as exc:
        entry["classification"] = None
        violations.append(exc.to_json())
    return entry


def cmd_parse(args, violations):
    text, F = _read_poly(args)
    return {"source": text}, {
        "canonical": str(F),
        "bidegree": [F.a, F.b],
        "support": [list(p) for p in F.support()],
    }


def cmd_corners(args, violations):
    text, F = _read_poly(args)
    return {"polynomial": text}, corner_report(F).to_json()


def cmd_smooth(args, violations):
    text, F = _read_poly(args)
    return {"polynomial": text}, is_smooth(F, exact=args.exact).to_json()


def cmd_genus(args, violations):
    return {"a": args.a, "b": args.b}, {"genus": genus(args.a, args.b)}


def cmd_order_menu(args, violations):
    menu = sorted(order_menu(args.a, args.b))
    return {"a": args.a, "b": args.b}, {"menu": menu, "text": "{" + ",".join(map(str, menu)) + "}"}


def _max_conductor(args, F: BiPoly) -> int:
    return args.max_conductor if args.max_conductor is not None else default_max_conductor(F.a, F.b)


def cmd_auts(args, violations):
    text, F = _read_poly(args)
    n_max = _max_conductor(args, F)
    certs = enumerate_diagonal_auts(F, n_max)
    swaps = enumerate_swap_auts(F, n_max) if F.a == F.b else []
    return {"polynomial": text, "max_conductor": n_max}, {
        "diagonal": [c.to_json() for c in certs],
        "diagonal_group": group_structure(certs).to_json(),
        "swap": [c.to_json() for c in swaps],
    }


def _certify_aut(F: BiPoly, text: str):
    g = parse_automorphism(text)
    cert = certify(F, g)
    if cert is None:
        raise UsageError(f"{g} does not preserve the curve")
    return cert


def cmd_classify(args, violations):
    text, F = _read_poly(args)
    _require_smooth(F)
    inputs = {"polynomial": text}
    if args.aut is not None:
        inputs["automorphism"] = args.aut
        certs = [_certify_aut(F, args.aut)]
    else:
        n_max = _max_conductor(args, F)
        inputs["max_conductor"] = n_max
        certs = enumerate_diagonal_auts(F, n_max)
        if F.a == F.b:
            certs += enumerate_swap_auts(F, n_max)
    return inputs, {"certificates": [_certificate_entry(F, c, violations) for c in certs]}


def cmd_quotient_genus(args, violations):
    text, F = _read_poly(args)
    _require_smooth(F)
    cert = _certify_aut(F, args.aut)
    results = cert.to_json()
    results["fixed_points"] = fixed_point_count(F, cert.automorphism)
    results["galois"] = galois_criterion(F, cert)
    try:
        results["quotient"] = quotient_genus(F, cert).to_json()
    except NonIntegralGenus as exc:
        results["quotient"] = None
        violations.append({"reason": str(exc), "repro": exc.repro})
    return {"polynomial": text, "automorphism": args.aut}, results


def cmd_family(args, violations):
    fid = CLI_NAMES.get(args.family)
    if fid is None:
        raise UsageError(f"unknown family {args.family!r}; choose from {', '.join(CLI_NAMES)}")
    s = parse_scalar(args.s)
    s2 = parse_scalar(args.s2) if args.s2 is not None else None
    spec = FamilySpec(fid, args.a, args.b, s, s2)
    rep = validate_family(spec)
    for failure in rep.failures:
        violations.append({"reason": failure, "family": spec.label()})
    inputs = {"family": args.family, "a": args.a, "b": args.b, "s": args.s, "s2": args.s2}
    return inputs, rep.to_json()


def cmd_verify(args, violations):
    report = run_sweep(args.a_range, args.b_range, args.trials, args.seed)
    violations.extend(report.violations)
    inputs = {"a_range": list(args.a_range), "b_range": list(args.b_range), "trials": args.trials, "seed": args.seed}
    return inputs, report.to_json()


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="biquad", description="Automorphisms of curves of bidegree (a,b) in P1 x P1.")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("parse", help="echo canonical form, bidegree and support")
    _add_poly_args(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("corners", help="corner polynomials and membership")
    _add_poly_args(p)
    p.set_defaults(func=cmd_corners)

    p = sub.add_parser("smooth", help="smoothness verdict with witness")
    _add_poly_args(p)
    p.add_argument("--exact", action="store_true", help="skip the modular certificate")
    p.set_defaults(func=cmd_smooth)

    for name, func in (("genus", cmd_genus), ("order-menu", cmd_order_menu)):
        p = sub.add_parser(name)
        p.add_argument("a", type=int)
        p.add_argument("b", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("auts", help="invariance certificates from both enumerators")
    _add_poly_args(p)
    p.add_argument("--max-conductor", type=int)
    p.set_defaults(func=cmd_auts)

    p = sub.add_parser("classify", help="corner-case classification per certificate")
    _add_poly_args(p)
    p.add_argument("--aut", help="classify only this automorphism")
    p.add_argument("--max-conductor", type=int)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("quotient-genus", help="genus of the quotient by <f>")
    _add_poly_args(p)
    p.add_argument("--aut", required=True)
    p.set_defaults(func=cmd_quotient_genus)

    p = sub.add_parser("family", help="build and validate a family member")
    p.add_argument("family", help=", ".join(CLI_NAMES))
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("--s", required=True)
    p.add_argument("--s2")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("verify", help="randomized sweep over smooth curves and all families")
    p.add_argument("--a-range", type=_range, required=True)
    p.add_argument("--b-range", type=_range, required=True)
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def _text(command: str, results: dict, violations: list) -> str:
    if "text" in results:
        body = results["text"]
    else:
        body = json.dumps(results, indent=2)
    if violations:
        body += "\n" + "\n".join(f"VIOLATION: {v.get('reason', v.get('check'))}" for v in violations)
    return body


def run_command(argv: list[str] | None = None, out=None) -> int:
    """Run one command, write its report and return the exit code."""
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        violations: list = []
        inputs, results = args.func(args, violations)
    except UsageError as exc:
        print(str(exc).rstrip(), file=sys.stderr)
        return 2
    except (ParseError, NotBihomogeneous, DegreeTooSmall, ParamZero, NotCoprime, ValueError) as exc:
        print(f"biquad: {exc}", file=sys.stderr)
        return 2
    if args.format == "text":
        print(_text(args.command, results, violations), file=out)
    else:
        report = {"schema": SCHEMA, "command": args.command, "inputs": inputs, "results": results, "violations": violations}
        print(json.dumps(report, indent=2), file=out)
    return 1 if violations else 0


def main() -> None:
    sys.exit(run_command())
