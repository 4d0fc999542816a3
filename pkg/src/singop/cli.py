"""Command-line front end.

Exit codes: 0 ok, 1 a check reported violations, 2 usage error,
3 precision or guard error.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from math import gcd
from typing import List, Optional

from . import __version__
from .etaquot import D_L_table, build_Bpk, check_modularity_conditions, eta_info, holomorphy_report
from .overpartitions import (
    ENUMERATION_GUARD,
    GuardError,
    SingularClass,
    c31_series,
    enumerate_singular,
    singular_series,
)
from .qseries import ZZ, SeriesError, residue_ring, write_csv
from .verify import (
    DENSITY_GUARD,
    PRESETS,
    check_pattern,
    check_serre_congruence,
    density_profile,
    write_density_csv,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def _x_list(text: str) -> List[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad X list {text!r}") from None
    if not vals or any(v < 0 for v in vals):
        raise argparse.ArgumentTypeError(f"bad X list {text!r}")
    return vals


def _dump_json(obj, out) -> None:
    out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _singular_class(args) -> SingularClass:
    try:
        return SingularClass(args.k, args.i)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_coeffs(args, out) -> int:
    cls = _singular_class(args)
    ring = ZZ if args.mod is None else residue_ring(args.mod)
    s = singular_series(cls, args.limit, ring)
    if args.format == "json":
        _dump_json({"k": cls.k, "i": cls.i, "mod": args.mod, "coefficients": s.tolist()}, out)
    else:
        write_csv(s, out)
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    cls = _singular_class(args)
    count = enumerate_singular(cls, args.n)
    if args.format == "json":
        _dump_json({"k": cls.k, "i": cls.i, "n": args.n, "count": count}, out)
    else:
        out.write(f"{count}\n")
    return EXIT_OK


def cmd_oracle_check(args, out) -> int:
    cls = _singular_class(args)
    if args.limit > ENUMERATION_GUARD:
        raise GuardError(f"limit {args.limit} exceeds enumeration guard {ENUMERATION_GUARD}")
    s = singular_series(cls, args.limit)
    mismatches = [
        {"n": n, "series": s[n], "enumeration": e}
        for n in range(args.limit + 1)
        if (e := enumerate_singular(cls, n)) != s[n]
    ]
    _dump_json({"k": cls.k, "i": cls.i, "limit": args.limit, "mismatches": mismatches}, out)
    return EXIT_VIOLATION if mismatches else EXIT_OK


def _bpk(args):
    try:
        return build_Bpk(args.p, args.kpow)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_eta_info(args, out) -> int:
    _dump_json(eta_info(_bpk(args)), out)
    return EXIT_OK


def cmd_cusps(args, out) -> int:
    _bpk(args)
    rows = D_L_table(args.kpow)
    eq_order = (lambda r: r.order_B2) if args.p == 2 else (lambda r: r.order_B3)
    if args.format == "json":
        _dump_json(
            {
                "p": args.p,
                "kpow": args.kpow,
                "rows": [
                    {"d": r.d, "D": str(r.D), "L": str(r.L),
                     "order_num": eq_order(r).numerator, "order_den": eq_order(r).denominator}
                    for r in rows
                ],
            },
            out,
        )
    else:
        out.write("d,D,L,order_num,order_den\n")
        for r in rows:
            o = eq_order(r)
            out.write(f"{r.d},{r.D},{r.L},{o.numerator},{o.denominator}\n")
    return EXIT_OK


def cmd_verify_modular(args, out) -> int:
    eq = _bpk(args)
    rep = check_modularity_conditions(eq)
    hol = holomorphy_report(eq)
    negative = [row.d for row in hol.rows if row.order < 0]
    ok = rep.ok and hol.holomorphic
    _dump_json(
        {
            "p": args.p,
            "kpow": args.kpow,
            "level": eq.level,
            "sum1_mod24": rep.sum_delta_mod24,
            "sum2_mod24": rep.sum_codelta_mod24,
            "weight": str(rep.weight),
            "weight_integral": rep.weight_integral,
            "holomorphic": hol.holomorphic,
            "negative_cusps": negative,
            "ok": ok,
        },
        out,
    )
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_verify_congruences(args, out) -> int:
    patterns = PRESETS[args.preset]
    need = max(p.A * args.nmax + p.B for p in patterns)
    modulus = 1
    for p in patterns:
        modulus = modulus * p.M // gcd(modulus, p.M)
    s = c31_series(need, residue_ring(modulus))
    report = []
    failed = False
    for pat in patterns:
        viol = check_pattern(s, pat, args.nmax)
        failed |= bool(viol.total)
        report.append({"A": pat.A, "B": pat.B, "M": pat.M, "nmax": args.nmax, **viol.to_json()})
    _dump_json({"preset": args.preset, "patterns": report}, out)
    return EXIT_VIOLATION if failed else EXIT_OK


def cmd_serre_check(args, out) -> int:
    _bpk(args)
    viol = check_serre_congruence(args.p, args.kpow, args.terms)
    _dump_json(
        {"p": args.p, "kpow": args.kpow, "terms": args.terms,
         "modulus": args.p ** (args.kpow + 1), **viol.to_json()},
        out,
    )
    return EXIT_VIOLATION if viol.total else EXIT_OK


def cmd_density(args, out) -> int:
    xs = args.profile if args.profile else []
    if args.x is not None:
        xs = [args.x] + [x for x in xs if x != args.x]
    if not xs:
        raise UsageError("density needs --x or --profile")
    records = density_profile(args.mod, xs, guard=args.guard)
    if args.format == "json":
        _dump_json(
            [{"modulus": r.modulus, "X": r.X, "hits": r.hits, "ratio_num": r.ratio.numerator,
              "ratio_den": r.ratio.denominator, "ratio_decimal": r.ratio_decimal()} for r in records],
            out,
        )
    else:
        write_density_csv(records, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="singop", description="Singular overpartitions and eta-quotient checks.")
    parser.add_argument("--version", action="store_true", help="print version and exit")
    parser.add_argument("-o", "--output", help="write data output here instead of stdout")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, help_, fmt=("csv", "json"), default=None):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=fmt, default=default or fmt[0])
        sp.set_defaults(func=func)
        return sp

    sp = add("coeffs", cmd_coeffs, "print n,C_{k,i}(n) for n <= limit")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("--limit", type=_nonneg, required=True)
    sp.add_argument("--mod", type=int)

    sp = add("enumerate", cmd_enumerate, "brute-force count", fmt=("plain", "json"))
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("--n", type=_nonneg, required=True)

    sp = add("oracle-check", cmd_oracle_check, "series vs enumeration", fmt=("json",))
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("--limit", type=_nonneg, required=True)

    for name, func, help_, fmt in (
        ("eta-info", cmd_eta_info, "eta-quotient report for B_(p,k)", ("json",)),
        ("cusps", cmd_cusps, "D/L table and cusp orders", ("csv", "json")),
        ("verify-modular", cmd_verify_modular, "modularity hypotheses and holomorphy", ("json",)),
        ("serre-check", cmd_serre_check, "B_(p,k) = sum C31(n) q^(24n) mod p^(k+1)", ("json",)),
    ):
        sp = add(name, func, help_, fmt=fmt)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--kpow", type=_positive, required=True)
        if name == "serre-check":
            sp.add_argument("--terms", type=_positive, default=500)

    sp = add("verify-congruences", cmd_verify_congruences, "known congruences for C31", fmt=("json",))
    sp.add_argument("--preset", choices=sorted(PRESETS), default="all")
    sp.add_argument("--nmax", type=_nonneg, required=True)

    sp = add("density", cmd_density, "divisibility density of C31(n)")
    sp.add_argument("--mod", type=int, required=True)
    sp.add_argument("--x", type=_nonneg)
    sp.add_argument("--profile", type=_x_list)
    sp.add_argument("--guard", type=_positive, default=DENSITY_GUARD)
    return parser


def run(argv: Optional[List[str]] = None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.version:
            stdout.write(f"singop {__version__}\n")
            return EXIT_OK
        if args.command is None:
            raise UsageError("a subcommand is required")
        if getattr(args, "mod", None) is not None and not 2 <= args.mod < 2**31:
            raise UsageError(f"--mod must satisfy 2 <= M < 2**31, got {args.mod}")
        buf = io.StringIO()
        code = args.func(args, buf)
    except UsageError as exc:
        print(f"singop: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GuardError, SeriesError) as exc:
        print(f"singop: error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
    else:
        stdout.write(buf.getvalue())
    return code


def main() -> None:
    sys.exit(run())
