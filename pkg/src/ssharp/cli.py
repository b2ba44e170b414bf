"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 bad input,
3 precision exhausted or numeric certification failed.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .cobordism import CobordismPresentation, IllFormed
from .curves.certificate import CountMismatch, certify_family
from .curves.families import GenericityViolated, InvalidParameters, family_intersections
from .curves.singular import CertificationFailed, InfiniteLocus, singular_points
from .deduction import Inconsistent, ValuationConstraintSystem, deduce_valuations
from .invariants import (CertificateIncomplete, NotComponentPreserving, NotConnected,
                         closed_form_torus_link, curve_invariants, report)
from .module import basis, index_string, parse_index
from .parser import PolySyntaxError, parse_field, parse_poly
from .series import DEFAULT_ORDER, PrecisionExhausted
from .verify import DEFAULT_SEED, UnknownFilter, run_checks

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_PRECISION = 0, 1, 2, 3

_INPUT_ERRORS = (ValueError, KeyError, TypeError, OSError, json.JSONDecodeError)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _rationals(text: str) -> list[Fraction]:
    try:
        return [Fraction(t) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}")


def _global_flags(parser: argparse.ArgumentParser, defaults: bool) -> None:
    # subcommands repeat the flags with suppressed defaults so either position works
    def d(v):
        return v if defaults else argparse.SUPPRESS
    parser.add_argument("--precision", type=int, default=d(None),
                        help=f"series truncation order (default {DEFAULT_ORDER}); "
                             "for curve analyze, starting bits of the numeric tier (default 64)")
    parser.add_argument("--format", choices=("json", "table"), default=d("json"))
    parser.add_argument("--seed", type=int, default=d(DEFAULT_SEED),
                        help="seed for randomized checks")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, defaults=False)

    p = _Parser(prog="ssharp", description="s-sharp invariants, nodal curves and checks")
    _global_flags(p, defaults=True)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    inv = sub.add_parser("invariant", help="compute invariants").add_subparsers(
        dest="what", required=True, parser_class=_Parser)
    pres = inv.add_parser("pres", parents=[common], help="from a presentation JSON file")
    pres.add_argument("file")
    torus = inv.add_parser("torus", parents=[common], help="torus link T(md, nd)")
    torus.add_argument("--m", type=int, required=True)
    torus.add_argument("--n", type=int, required=True)
    torus.add_argument("--d", type=int, required=True)
    torus.add_argument("--index", help="one basis index such as +-+")
    torus.add_argument("--pipeline", action="store_true",
                       help="compute from the certified family curve instead of the closed form")

    curve = sub.add_parser("curve", help="plane curves").add_subparsers(
        dest="what", required=True, parser_class=_Parser)
    an = curve.add_parser("analyze", parents=[common], help="singular points of a polynomial")
    an.add_argument("--poly", required=True)
    an.add_argument("--field", help="zeta:d declares the generator w")
    fam = curve.add_parser("family", parents=[common], help="certify the torus-link family")
    fam.add_argument("--m", type=int, required=True)
    fam.add_argument("--n", type=int, required=True)
    fam.add_argument("--d", type=int, required=True)
    fam.add_argument("--a", type=_rationals)
    fam.add_argument("--eps", type=_rationals)

    ded = sub.add_parser("deduce", parents=[common], help="solve a valuation constraint system")
    ded.add_argument("file")

    ver = sub.add_parser("verify", help="regression checks").add_subparsers(
        dest="what", required=True, parser_class=_Parser)
    paper = ver.add_parser("paper", parents=[common], help="run the regression checks")
    paper.add_argument("--filter", help="substring of the check name")
    return p


def _order(args) -> int:
    order = DEFAULT_ORDER if args.precision is None else args.precision
    if order < 1:
        raise ValueError("--precision must be positive")
    return order


def _load_json(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _cmd_invariant(args) -> tuple[int, dict]:
    if args.what == "pres":
        pres = CobordismPresentation.from_json(_load_json(args.file))
        return EXIT_OK, report(pres, _order(args)).to_json()
    m, n, d = args.m, args.n, args.d
    if args.pipeline:
        table = curve_invariants(certify_family(m, n, d), _order(args)).s_I
        source = "certified family curve"
    else:
        table = {index_string(I): closed_form_torus_link(m, n, d, I) for I in basis(d)}
        source = "closed form"
    if args.index:
        key = index_string(parse_index(args.index))
        if key not in table:
            raise ValueError(f"index {args.index!r} needs {d} signs")
        table = {key: table[key]}
    return EXIT_OK, {"m": m, "n": n, "d": d, "source": source, "s_I": table}


def _cmd_curve(args) -> tuple[int, dict]:
    if args.what == "analyze":
        P = parse_poly(args.poly, parse_field(args.field))
        bits = 64 if args.precision is None else args.precision
        pts = singular_points(P, precision=bits)
        return EXIT_OK, {"polynomial": str(P), "field": str(P.field),
                         "singular_points": [p.to_json() for p in pts],
                         "count": len(pts), "nodes": sum(p.is_node for p in pts)}
    cert = certify_family(args.m, args.n, args.d, args.a, args.eps)
    pairs = family_intersections(args.m, args.n, args.d, args.a, args.eps)
    out = cert.to_json()
    out["total_nodes"] = cert.total_nodes
    out["pairs"] = [{"pair": list(p.pair), "count": p.count,
                     "closed_form_x": [str(x) for x in p.closed_form]} for p in pairs]
    return EXIT_OK, out


def _cmd_deduce(args) -> tuple[int, dict]:
    system = ValuationConstraintSystem.from_json(_load_json(args.file))
    try:
        return EXIT_OK, deduce_valuations(system).to_json()
    except Inconsistent as exc:
        return EXIT_FAILED, {"status": "inconsistent", "reason": str(exc)}


def _cmd_verify(args) -> tuple[int, dict]:
    results = run_checks(args.filter, args.seed)
    ok = all(r.passed for r in results)
    return (EXIT_OK if ok else EXIT_FAILED), {
        "seed": args.seed, "passed": ok, "checks": [r.to_json() for r in results]}


def _table(data, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(data, dict):
        for k, v in data.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_table(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(data, list):
        for v in data:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_table(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{data}")
    return "\n".join(lines)


def _verify_table(out: dict) -> str:
    return "\n".join(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}" for c in out["checks"])


_COMMANDS = {"invariant": _cmd_invariant, "curve": _cmd_curve, "deduce": _cmd_deduce,
             "verify": _cmd_verify}


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        code, out = _COMMANDS[args.command](args)
    except (PrecisionExhausted, CertificationFailed) as exc:
        print(f"ssharp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (PolySyntaxError, UnknownFilter, IllFormed, Inconsistent, InfiniteLocus,
            InvalidParameters, GenericityViolated, CountMismatch, NotConnected,
            NotComponentPreserving, CertificateIncomplete) + _INPUT_ERRORS as exc:
        print(f"ssharp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        print(json.dumps(out, indent=2, sort_keys=False), file=stdout)
    elif args.command == "verify":
        print(_verify_table(out), file=stdout)
    else:
        print(_table(out), file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
