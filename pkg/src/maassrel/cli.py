"""Command-line interface.

Exit codes: 0 pass, 1 parse error, 2 domain error, 3 incomplete data,
4 relation failure.  All output is JSON on stdout; diagnostics go to
stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import bessel, quadforms, sk
from .errors import (
    ConfigurationError,
    DomainError,
    IncompleteTableError,
    TableFormatError,
    UsageError,
)
from .scalars import format_rational, parse_rational, parse_scalar

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_INCOMPLETE, EXIT_FAIL = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


# -- bessel -----------------------------------------------------------------

def cmd_bessel(args) -> int:
    q = args.q
    try:
        A = parse_scalar(args.A, q)
        B = parse_scalar(args.B, q)
        params = bessel.SphericalParams(q, A, B, args.delta)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE)
    if args.l < 0 or args.m < 0:
        raise CliError("l and m must be non-negative", EXIT_PARSE)
    cls = bessel.classify(params)
    if args.l == 0:
        value = bessel.b0(params, args.m)
        path = "recurrence"
    else:
        if cls.kind is not bessel.BesselKind.SK_TYPE:
            raise CliError(
                f"B(h({args.l},{args.m})) needs SK-type parameters (classification {cls.kind.value}); "
                "the available generating-function data determines only l = 0",
                EXIT_DOMAIN,
            )
        value = bessel.blm_sk(params, args.l, args.m)
        path = "local-maass-relation"
    _emit({
        "value": str(value),
        "scalar": value.to_json(),
        "classification": cls.to_json(),
        "path": path,
        "params": params.to_json(),
        "l": args.l,
        "m": args.m,
    })
    return EXIT_OK


# -- qforms -----------------------------------------------------------------

def cmd_qforms(args) -> int:
    if args.subverb == "reduce":
        S = quadforms.QForm(args.a, args.b, args.c)
        R, T = quadforms.reduce(S)
        _emit({"input": S.to_json(), "reduced": R.to_json(), "transform": [list(r) for r in T],
               "disc": R.disc, "content": R.content})
        return EXIT_OK
    if args.subverb == "enum":
        forms = quadforms.enumerate_classes(args.D, args.L)
        _emit({"D": args.D, "L": args.L, "count": len(forms), "forms": [S.to_json() for S in forms]})
        return EXIT_OK
    # count
    D = args.d * args.M * args.M
    enumerated = len(quadforms.enumerate_classes(D, args.L))
    formula = quadforms.class_count_formula(args.d, args.M, args.L)
    _emit({"d": args.d, "M": args.M, "L": args.L, "enumerated": enumerated, "formula": formula,
           "agree": enumerated == formula})
    return EXIT_OK if enumerated == formula else EXIT_FAIL


# -- arch -------------------------------------------------------------------

def cmd_arch(args) -> int:
    S = quadforms.QForm(args.a, args.b, args.c)
    dec = quadforms.arch_decompose(S)
    _emit({"form": S.to_json(), "k": args.k, "bessel_arch": quadforms.bessel_arch(S, args.k),
           "bessel_arch_decomposed": quadforms.bessel_arch_from_decomposition(S, args.k),
           "decomposition": dec.to_json()})
    return EXIT_OK


# -- sk ---------------------------------------------------------------------

def _parse_map(text: str, value_parser, what: str) -> dict:
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, sep, val = item.rpartition(":")
        if not sep:
            raise CliError(f"malformed {what} item {item!r}; expected key:value", EXIT_PARSE)
        try:
            out[int(key)] = value_parser(val)
        except ValueError as exc:
            raise CliError(f"malformed {what} item {item!r}: {exc}", EXIT_PARSE)
    return out


def _load_table(path: str) -> sk.CoefficientTable:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE)
    try:
        return sk.CoefficientTable.loads(text)
    except TableFormatError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE)


def cmd_sk(args) -> int:
    if args.subverb == "gen":
        eigen = _parse_map(args.eigen, int, "--eigen")
        base = _parse_map(args.base, parse_rational, "--base")
        try:
            lift = sk.SKLiftSpec(sk.EllipticHecke(args.k, eigen), base)
        except ValueError as exc:
            raise CliError(str(exc), EXIT_PARSE)
        table = sk.generate_table(lift, args.disc_bound)
        text = table.dumps()
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
            _emit({"written": args.out, "weight": table.k, "entries": len(table)})
        else:
            sys.stdout.write(text)
        return EXIT_OK

    table = _load_table(args.table)
    if args.subverb == "check":
        report = sk.maass_check(table)
        _emit(report.to_json())
        if report.failed or report.class_function_failures:
            return EXIT_FAIL
        return EXIT_INCOMPLETE if report.incomplete else EXIT_OK
    if args.subverb == "detect":
        result = sk.detect_sk(table, args.d, args.p)
        _emit(result.to_json())
        return EXIT_OK if result.verdict is sk.Verdict.CONSISTENT else EXIT_FAIL
    # asymptotic
    primes = [int(p) for p in args.primes.split(",") if p.strip()] if args.primes else []
    rows = sk.detect_asymptotic(table, args.d, primes)
    _emit({"d": args.d, "weight": table.k, "diagnostic": [
        {"p": r["p"], "value": format_rational(r["value"])} if "value" in r else r for r in rows
    ]})
    return EXIT_INCOMPLETE if any("incomplete" in r for r in rows) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="maassrel", description="Exact Saito-Kurokawa / Bessel function toolkit.")
    verbs = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = verbs.add_parser("bessel", help="value of the spherical Bessel function B(h(l,m))")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--A", required=True, help='trace literal, e.g. "0" or "1+1/2*sqrt(2)"')
    p.add_argument("--B", required=True)
    p.add_argument("--delta", type=int, required=True, choices=(-1, 0, 1))
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--m", type=int, default=0)
    p.set_defaults(func=cmd_bessel)

    p = verbs.add_parser("qforms", help="binary quadratic form utilities")
    sub = p.add_subparsers(dest="subverb", required=True, parser_class=_Parser)
    r = sub.add_parser("reduce")
    for name in ("a", "b", "c"):
        r.add_argument(f"--{name}", type=int, required=True)
    e = sub.add_parser("enum")
    e.add_argument("--D", type=int, required=True)
    e.add_argument("--L", type=int, default=1)
    c = sub.add_parser("count")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--M", type=int, default=1)
    c.add_argument("--L", type=int, default=1)
    p.set_defaults(func=cmd_qforms)

    p = verbs.add_parser("arch", help="archimedean Bessel value det(S)^(k/2) exp(-2 pi Tr S)")
    for name in ("a", "b", "c"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_arch)

    p = verbs.add_parser("sk", help="Saito-Kurokawa coefficient tables and checks")
    sub = p.add_subparsers(dest="subverb", required=True, parser_class=_Parser)
    g = sub.add_parser("gen")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--eigen", required=True, help='Hecke eigenvalues, e.g. "2:10,3:5"')
    g.add_argument("--base", required=True, help='base values a(d;1), e.g. "-4:1/1,-3:2"')
    g.add_argument("--disc-bound", type=int, required=True)
    g.add_argument("--out")
    for name in ("check", "detect", "asymptotic"):
        s = sub.add_parser(name)
        s.add_argument("--table", required=True)
        if name == "detect":
            s.add_argument("--d", type=int, required=True)
            s.add_argument("--p", type=int, required=True)
        if name == "asymptotic":
            s.add_argument("--d", type=int, required=True)
            s.add_argument("--primes", default="", help="comma-separated primes")
    p.set_defaults(func=cmd_sk)
    return parser


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    # every option takes a value; "--base -4:1/1" would otherwise read "-4:1/1" as a flag
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (tok.startswith("--") and "=" not in tok and tok != "--help"
                and nxt is not None and nxt.startswith("-") and not nxt.startswith("--")):
            out.append(f"{tok}={nxt}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(_join_negative_values(argv))
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except IncompleteTableError as exc:
        print(f"incomplete: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (DomainError, UsageError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
