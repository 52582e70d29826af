"""Command-line interface.

Exit codes: 0 success (and certificate verdict pass), 1 certificate verdict
fail, 2 usage or input error.  Output is deterministic; diagnostics go to
standard error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import brauer, extensions, padic, symbols, verifier

_TOWER_COORDS = re.compile(r"^(-?\d+(?:/\d+)?)\+(-?\d+(?:/\d+)?)r$")


def _parse_tower(text: str, a: Fraction, prime: int) -> extensions.TowerElement:
    match = _TOWER_COORDS.fullmatch(text.strip())
    if match is None:
        raise ValueError(
            f'cannot parse {text!r} as a tower element; expected "<x>+<y>r" '
            f"with rational x, y, e.g. \"2+1r\"")
    x, y = Fraction(match.group(1)), Fraction(match.group(2))
    return extensions.TowerElement.quadratic(prime, a, x, y)


def _emit_certificate(cert: verifier.Certificate, args) -> int:
    if args.format == "json":
        print(cert.to_json())
    else:
        print(cert.to_text())
    return 0 if cert.verdict == "pass" else 1


def _cmd_hilbert(args) -> int:
    value = symbols.hilbert(args.a, args.b, args.p)
    if args.format == "json":
        print(json.dumps(int(value)))
    else:
        print(value)
    return 0


def _cmd_square_classes(args) -> int:
    reps = [c.representative for c in padic.square_class_reps(args.p)]
    if args.format == "json":
        print(json.dumps(reps))
    else:
        print(" ".join(str(r) for r in reps))
    return 0


def _cmd_norm(args) -> int:
    v = _parse_tower(args.v, Fraction(args.a), args.p)
    norm = extensions.quad_norm(v)
    if args.format == "json":
        print(json.dumps(str(norm)))
    else:
        print(norm)
    return 0


def _cmd_certify_noncyclic(args) -> int:
    if args.degree == 4:
        cert = verifier.noncyclic_certificate_deg4(args.precision)
    else:
        cert = verifier.noncyclic_reduction_deg8(precision=args.precision)
    return _emit_certificate(cert, args)


def _cmd_construct_cyclic(args) -> int:
    construction = verifier.TameConstruction(
        args.p, args.l, args.n, e=args.e, i=args.i, j=args.j)
    return _emit_certificate(verifier.cyclic_construct_tame(construction), args)


def _cmd_construct_cyclic_2adic(args) -> int:
    construction = verifier.TwoAdicConstruction(args.p, args.r)
    return _emit_certificate(verifier.cyclic_construct_2adic(construction), args)


def _cmd_eta(args) -> int:
    if not 1 <= args.max_j <= 16:
        raise ValueError(f"--max-j must be in 1..16, got {args.max_j}")
    rows = [(j, extensions.eta_norm(j)) for j in range(1, args.max_j + 1)]
    if args.format == "json":
        print(json.dumps([[j, norm] for j, norm in rows]))
    else:
        for j, norm in rows:
            print(f"{j} {norm}")
    return 0


def _cmd_length_table(args) -> int:
    value = verifier.cyclic_length_table(args.p, args.n)
    if args.format == "json":
        print(json.dumps(value))
    else:
        print(value)
    return 0


def _cmd_mu_check(args) -> int:
    return _emit_certificate(verifier.mu_split_check(args.p, args.n), args)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=padic.DEFAULT_PRECISION,
                        help="p-adic working precision in digits (default 24)")
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="output format (default text)")

    parser = argparse.ArgumentParser(
        prog="localbrauer",
        description="Exact local-field arithmetic: Hilbert symbols, norm "
                    "groups, and Brauer-class certificates over Q_p and "
                    "Q_p((t)).")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_hilbert = sub.add_parser("hilbert", parents=[common],
                               help="Hilbert symbol (a, b)_p")
    p_hilbert.add_argument("p", type=int)
    p_hilbert.add_argument("a", type=Fraction)
    p_hilbert.add_argument("b", type=Fraction)
    p_hilbert.set_defaults(func=_cmd_hilbert)

    p_classes = sub.add_parser("square-classes", parents=[common],
                               help="canonical square-class representatives of Q_p")
    p_classes.add_argument("p", type=int)
    p_classes.set_defaults(func=_cmd_square_classes)

    p_norm = sub.add_parser("norm", parents=[common],
                            help="norm of x + y*sqrt(a) down to Q_p")
    p_norm.add_argument("--a", type=Fraction, required=True,
                        help="radicand of the quadratic field")
    p_norm.add_argument("--v", required=True,
                        help='element as "<x>+<y>r", r the square root of a')
    p_norm.add_argument("--p", type=int, default=2,
                        help="base prime (default 2)")
    p_norm.set_defaults(func=_cmd_norm)

    p_cert = sub.add_parser("certify-noncyclic", parents=[common],
                            help="noncyclicity certificate over Q_2((t))")
    p_cert.add_argument("--degree", type=int, choices=(4, 8), required=True)
    p_cert.set_defaults(func=_cmd_certify_noncyclic)

    p_tame = sub.add_parser("construct-cyclic", parents=[common],
                            help="cyclic splitting certificate, degree a power "
                                 "of l != p")
    p_tame.add_argument("--p", type=int, required=True)
    p_tame.add_argument("--l", type=int, required=True)
    p_tame.add_argument("--n", type=int, required=True)
    p_tame.add_argument("--e", type=int, default=None)
    p_tame.add_argument("--i", type=int, default=1)
    p_tame.add_argument("--j", type=int, default=1)
    p_tame.set_defaults(func=_cmd_construct_cyclic)

    p_2adic = sub.add_parser("construct-cyclic-2adic", parents=[common],
                             help="cyclic splitting certificate, degree 2^r, "
                                  "p = 3 mod 4")
    p_2adic.add_argument("--p", type=int, required=True)
    p_2adic.add_argument("--r", type=int, required=True)
    p_2adic.set_defaults(func=_cmd_construct_cyclic_2adic)

    p_eta = sub.add_parser("eta", parents=[common],
                           help="norms of the nested-radical tower generators "
                                "over Q_2")
    p_eta.add_argument("--max-j", type=int, required=True, dest="max_j")
    p_eta.set_defaults(func=_cmd_eta)

    p_table = sub.add_parser("length-table", parents=[common],
                             help="cyclic length of degree-n classes over "
                                  "Q_p((t))")
    p_table.add_argument("--p", type=int, required=True)
    p_table.add_argument("--n", type=int, required=True)
    p_table.set_defaults(func=_cmd_length_table)

    p_mu = sub.add_parser("mu-check", parents=[common],
                          help="roots-of-unity cyclicity criterion")
    p_mu.add_argument("--p", type=int, required=True)
    p_mu.add_argument("--n", type=int, required=True)
    p_mu.set_defaults(func=_cmd_mu_check)

    return parser


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
