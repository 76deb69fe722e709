"""Command-line front end: spectrum, verify, sweep, scan, gamma, fuzz.

All numeric output is exact integers.  JSON uses sorted keys and compact
separators so that parse + re-serialise is byte-identical; CSV and text
carry the same numbers.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional

from . import closed_forms, verifier
from .errors import BudgetExceeded, Error, ParseError
from .field import (
    DEFAULT_ENUM_CAP,
    FieldContext,
    FieldSpec,
    build_context,
    gamma_5n_direct,
    parse_field_spec,
)
from .spectrum import DEFAULT_N4_BUDGET, PowerMapCase, c_spectrum, c_uniformity

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_INCONSISTENT = 3
EXIT_USAGE = 64
EXIT_BUDGET = 65

_VERDICT_EXIT = {
    verifier.MATCH: EXIT_OK,
    verifier.NO_PREDICTOR: EXIT_OK,
    verifier.MISMATCH: EXIT_MISMATCH,
    verifier.PREDICTOR_INCONSISTENT: EXIT_INCONSISTENT,
}


# ---------------------------------------------------------------------------
# Argument parsing helpers
# ---------------------------------------------------------------------------

def parse_c(ctx: FieldContext, text: str) -> int:
    """c syntax: "-1" is the field's -1; a bare integer is the prime-subfield
    constant k mod p; "e:V" is a raw element encoding; "a,b,..." digits low
    to high."""
    text = text.strip()
    if text == "-1":
        return ctx.neg_one
    if text.startswith("e:"):
        try:
            v = int(text[2:])
        except ValueError as exc:
            raise ParseError(f"bad element encoding {text!r}") from exc
        if not 0 <= v < ctx.q:
            raise ParseError(f"encoding {v} outside [0, {ctx.q})")
        return v
    if "," in text:
        try:
            digits = [int(t) for t in text.split(",")]
        except ValueError as exc:
            raise ParseError(f"bad digit vector {text!r}") from exc
        if len(digits) > ctx.n or any(not 0 <= t < ctx.p for t in digits):
            raise ParseError(f"digit vector {text!r} invalid for GF({ctx.p}^{ctx.n})")
        v = 0
        for t in reversed(digits):
            v = v * ctx.p + t
        return v
    try:
        k = int(text)
    except ValueError as exc:
        raise ParseError(f"bad c value {text!r}") from exc
    return k % ctx.p


def parse_d(ctx: FieldContext, text: str, k: Optional[int]) -> int:
    """d syntax: a positive integer, or a named exponent:
    inv = q-2, pk1half = (p^k+1)/2 (needs --k), plus3half = (p^n+3)/2,
    minus3 = p^n-3, minus3half = (p^n-3)/2."""
    text = text.strip()
    named = {
        "inv": ctx.q - 2,
        "plus3half": (ctx.q + 3) // 2,
        "minus3": ctx.q - 3,
        "minus3half": (ctx.q - 3) // 2,
    }
    if text in named:
        return named[text]
    if text == "pk1half":
        if k is None:
            raise ParseError("--d pk1half requires --k")
        return (ctx.p ** k + 1) // 2
    try:
        d = int(text)
    except ValueError as exc:
        raise ParseError(f"bad exponent {text!r}") from exc
    if d <= 0:
        raise ParseError(f"exponent must be positive, got {d}")
    return d


def _build_ctx(args) -> FieldContext:
    spec = parse_field_spec(args.field)
    return build_context(spec, enum_cap=args.budget_q)


# ---------------------------------------------------------------------------
# Output formatting
# ---------------------------------------------------------------------------

def to_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _omega_json(omega: dict[int, int]) -> str:
    return json.dumps({str(i): w for i, w in sorted(omega.items())},
                      sort_keys=True, separators=(",", ":"))


def _eq_str(value) -> str:
    if value is None:
        return "skipped"
    return "true" if value else "false"


def _verify_csv_rows(reports) -> list[list]:
    rows = []
    for r in reports:
        rows.append(
            [
                r.p,
                r.n,
                ",".join(str(c) for c in r.modulus),
                r.d,
                r.c,
                r.verdict,
                r.computed.uniformity,
                _omega_json(r.computed.omega),
                _eq_str(r.eq1_ok),
                _eq_str(r.eq2_ok),
            ]
        )
    return rows


_VERIFY_CSV_HEADER = ["p", "n", "modulus", "d", "c", "verdict", "uniformity",
                      "omega_json", "eq1", "eq2"]


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_spectrum(args) -> int:
    ctx = _build_ctx(args)
    d = parse_d(ctx, args.d, args.k)
    c = parse_c(ctx, args.c)
    case = PowerMapCase(ctx, d, c)
    spec = c_spectrum(case)
    u, label = c_uniformity(case)
    payload = {
        "field": {"p": ctx.p, "n": ctx.n, "modulus": list(ctx.modulus)},
        "d": case.d,
        "c": c,
        "omega": {str(i): w for i, w in sorted(spec.omega.items())},
        "uniformity": u,
        "class": label,
    }
    if args.format == "json":
        _emit(args, to_json(payload))
    elif args.format == "csv":
        _emit(args, _csv_text(
            ["p", "n", "modulus", "d", "c", "uniformity", "class", "omega_json"],
            [[ctx.p, ctx.n, ",".join(map(str, ctx.modulus)), case.d, c, u, label,
              _omega_json(spec.omega)]],
        ))
    else:
        lines = [
            f"GF({ctx.p}^{ctx.n}) modulus {','.join(map(str, ctx.modulus))}",
            f"d = {case.d}, c = {c}",
            "omega: " + ", ".join(f"{i}:{w}" for i, w in sorted(spec.omega.items())),
            f"uniformity = {u} ({label})",
        ]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    ctx = _build_ctx(args)
    d = parse_d(ctx, args.d, args.k)
    c = parse_c(ctx, args.c)
    report = verifier.verify_with_context(ctx, d, c, n4_budget=args.budget_n4)
    if args.format == "json":
        _emit(args, to_json(report.as_dict()))
    elif args.format == "csv":
        _emit(args, _csv_text(_VERIFY_CSV_HEADER, _verify_csv_rows([report])))
    else:
        lines = [
            f"GF({ctx.p}^{ctx.n}) d = {report.d} c = {c}: {report.verdict}",
            "computed omega: "
            + ", ".join(f"{i}:{w}" for i, w in sorted(report.computed.omega.items())),
            f"eq1 = {_eq_str(report.eq1_ok)}, eq2 = {_eq_str(report.eq2_ok)}"
            + (f", N4 = {report.n4}" if report.n4 is not None else ""),
        ]
        for pr in report.predictions:
            status = "consistent" if pr.consistent else "INCONSISTENT"
            lines.append(
                f"prediction {pr.theorem.value} ({status}): "
                + ", ".join(f"{i}:{w}" for i, w in sorted(pr.omega.items()))
                + (f"  [{pr.notes}]" if pr.notes else "")
            )
        if report.matched_theorem:
            lines.append(f"matched: {report.matched_theorem}")
        _emit(args, "\n".join(lines) + "\n")
    return _VERDICT_EXIT[report.verdict]


def cmd_sweep(args) -> int:
    spec = parse_field_spec(args.field)
    ctx = build_context(spec, enum_cap=args.budget_q)
    d = parse_d(ctx, args.d, args.k)
    result = verifier.sweep_c(
        spec.p, spec.n, d, n4_budget=args.budget_n4, ctx=ctx,
    )
    if args.format == "json":
        _emit(args, to_json(result.as_dict()))
    elif args.format == "csv":
        _emit(args, _csv_text(_VERIFY_CSV_HEADER, _verify_csv_rows(result.reports)))
    else:
        lines = [
            f"GF({result.p}^{result.n}) d = {result.d}: sweep over {len(result.reports)} c values",
            "tallies: " + ", ".join(f"{k}={v}" for k, v in result.tallies.items()),
        ]
        for r in result.reports:
            lines.append(
                f"  c={r.c}: {r.verdict}, uniformity={r.computed.uniformity}, "
                + _omega_json(r.computed.omega)
            )
        _emit(args, "\n".join(lines) + "\n")
    if result.tallies[verifier.MISMATCH]:
        return EXIT_MISMATCH
    if result.tallies[verifier.PREDICTOR_INCONSISTENT]:
        return EXIT_INCONSISTENT
    return EXIT_OK


def cmd_scan(args) -> int:
    spec = parse_field_spec(args.field)
    ctx = build_context(spec, enum_cap=args.budget_q)
    c = parse_c(ctx, args.c)
    result = verifier.scan_exponents(
        spec.p, spec.n, c, args.max_uniformity, ctx=ctx,
    )
    if args.format == "json":
        _emit(args, to_json(result.as_dict()))
    elif args.format == "csv":
        rows = [[r["d"], r["uniformity"],
                 json.dumps(r["omega"], sort_keys=True, separators=(",", ":"))]
                for r in result.rows]
        _emit(args, _csv_text(["d", "uniformity", "omega_json"], rows))
    else:
        lines = [
            f"GF({result.p}^{result.n}) c = {result.c}: "
            f"{len(result.rows)} exponent classes with uniformity <= {result.max_uniformity}"
        ]
        for r in result.rows:
            lines.append(
                f"  d={r['d']}: uniformity={r['uniformity']}, "
                + json.dumps(r["omega"], sort_keys=True, separators=(",", ":"))
            )
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_gamma(args) -> int:
    n = args.n
    if n < 1:
        raise ParseError(f"--n must be >= 1, got {n}")
    closed = closed_forms.gamma_5n_closed(n)
    direct = None
    if 5 ** n <= args.budget_q:
        ctx = build_context(FieldSpec(5, n), enum_cap=args.budget_q)
        direct = gamma_5n_direct(ctx)
    payload = {
        "n": n,
        "closed": closed,
        "direct": direct,
        "equal": (closed == direct) if direct is not None else None,
    }
    if args.format == "json":
        _emit(args, to_json(payload))
    elif args.format == "csv":
        _emit(args, _csv_text(
            ["n", "closed", "direct", "equal"],
            [[n, closed, "" if direct is None else direct,
              "" if direct is None else str(closed == direct).lower()]],
        ))
    else:
        msg = f"gamma_5_{n}: closed = {closed}"
        if direct is not None:
            msg += f", direct = {direct}, equal = {str(closed == direct).lower()}"
        else:
            msg += ", direct skipped (field over budget)"
        _emit(args, msg + "\n")
    return EXIT_OK


def cmd_fuzz(args) -> int:
    report = verifier.fuzz_identities(args.seed, args.count, budget=args.budget_q)
    if args.format == "json":
        _emit(args, to_json(report.as_dict()))
    elif args.format == "csv":
        rows = [[c["p"], c["n"], c["d"], c["c"], c["n4"],
                 _eq_str(c["eq1"]), _eq_str(c["eq2"])] for c in report.cases]
        _emit(args, _csv_text(["p", "n", "d", "c", "n4", "eq1", "eq2"], rows))
    else:
        lines = [
            f"fuzz seed={report.seed} count={report.count} budget={report.budget}: "
            f"{report.count - len(report.failures)}/{report.count} passed",
            f"char-2 case present: {report.has_char2_case}; "
            f"gcd(d, q-1) > 1 case present: {report.has_gcd_gt1_case}",
        ]
        for f in report.failures:
            lines.append(f"  FAIL {f}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if report.all_ok else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def _add_common(sub, *, field=True, d=False, c=False, budget_q=DEFAULT_ENUM_CAP):
    if field:
        sub.add_argument("--field", required=True,
                         help='field as "p^n" or "p^n/c0,c1,...,cn"')
    if d:
        sub.add_argument("--d", required=True, help="exponent (integer or named form)")
    if c:
        sub.add_argument("--c", required=True, help='c value ("-1", integer, e:ENC, digits)')
    sub.add_argument("--k", type=int, default=None, help="k for the pk1half exponent form")
    sub.add_argument("--budget-q", type=int, default=budget_q,
                     help="max field size for enumeration")
    sub.add_argument("--budget-n4", type=int, default=DEFAULT_N4_BUDGET,
                     help="max field size for the quadruple count")
    sub.add_argument("--seed", type=int, default=1, help="PRNG seed")
    sub.add_argument("--format", choices=("json", "csv", "text"), default="text")
    sub.add_argument("--out", default=None, help="write output to FILE instead of stdout")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cdspec",
        description="c-differential spectra of power maps over GF(p^n)",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("spectrum", help="enumerate one spectrum")
    _add_common(sp, d=True, c=True)
    sp.set_defaults(func=cmd_spectrum)

    sp = subs.add_parser("verify", help="compare enumeration against closed forms")
    _add_common(sp, d=True, c=True)
    sp.set_defaults(func=cmd_verify)

    sp = subs.add_parser("sweep", help="verify every c in the field")
    _add_common(sp, d=True)
    sp.set_defaults(func=cmd_sweep)

    sp = subs.add_parser("scan", help="scan exponent classes by uniformity")
    _add_common(sp, c=True)
    sp.add_argument("--max-uniformity", type=int, required=True)
    sp.set_defaults(func=cmd_scan)

    sp = subs.add_parser("gamma", help="cubic character sum over GF(5^n)")
    _add_common(sp, field=False)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_gamma)

    sp = subs.add_parser("fuzz", help="randomised identity checks")
    _add_common(sp, field=False, budget_q=343)  # every draw runs a quadruple count
    sp.add_argument("--count", type=int, default=100)
    sp.set_defaults(func=cmd_fuzz)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, Error, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
