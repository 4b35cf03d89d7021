"""``qident`` command line: families, verify, lerch, zeta and padic."""

from __future__ import annotations

import argparse
import json
import os
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from importlib.resources import files
from typing import Sequence

from . import __version__
from .claims import CLAIM_IDS, Verdict, run_catalog
from .errors import QidentError
from .exactmath import parse_rational
from .lerch import (
    QValue,
    power_sum_closed,
    power_sum_tail_bound,
    power_sum_truncated,
    qzeta_series,
    qzeta_special,
)
from .padic import SumSpec, witt_convergence_report
from .qfamilies import Kind, Route, family_table
from .report import FORMATS, Report, latex_expression, render

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MISMATCH = 3

GOLDEN_MANIFEST = "golden_verify.jsonl"


def golden_manifest_path():
    """The shipped `verify --claims all --max-n 10` JSON Lines report."""
    return files("qident") / "data" / GOLDEN_MANIFEST


SYMBOLS = {
    Kind.QBernoulliNum: "B_{%d}(q)",
    Kind.QEulerNum: "E_{%d}(q)",
    Kind.FrobeniusEuler: "H_{%d}(q^{-1})",
    Kind.QBernoulliPoly: "B_{%d}(x|q)",
    Kind.QEulerPoly: "E_{%d}(x|q)",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def worker_count() -> int:
    raw = os.environ.get("QIDENT_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"QIDENT_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise UsageError("QIDENT_THREADS must be >= 0")
    return n if n else min(8, os.cpu_count() or 1)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (QidentError, ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _decimal(x: Fraction, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(x.numerator) / Decimal(x.denominator))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qident", description="Exact q-Bernoulli / q-Euler identity auditing.")
    parser.add_argument("--version", action="version", version=f"qident {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(p):
        p.add_argument("--format", choices=FORMATS, default="text")

    p = sub.add_parser("families", help="tabulate a q-family")
    p.add_argument("--kind", choices=[k.value for k in Kind], required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--route", choices=[r.value for r in Route], default=Route.Recurrence.value)
    fmt(p)

    p = sub.add_parser("verify", help="audit the identity catalog")
    p.add_argument("--claims", nargs="+", default=["all"],
                   help="'all' or claim ids (space or comma separated)")
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--max-k", type=int, default=5)
    p.add_argument("--max-s", type=int, default=3)
    p.add_argument("--manifest",
                   help="JSON Lines manifest to diff against ('golden' = the shipped one)")
    fmt(p)

    p = sub.add_parser("lerch", help="power sum sum_m q^m m^j: closed form vs partial sum")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--q", type=_rational, required=True)
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--decimal", type=int, metavar="DIGITS",
                   help="add decimal presentation columns with this many significant digits")
    fmt(p)

    p = sub.add_parser("zeta", help="q-zeta special values or partial sums")
    p.add_argument("--n", type=int, help="special value zeta_q(1-n): printed formula vs oracle")
    p.add_argument("--s", type=int)
    p.add_argument("--q", type=_rational)
    p.add_argument("--terms", type=int)
    fmt(p)

    p = sub.add_parser("padic", help="p-adic convergence of Riemann sums to the symbolic moments")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--mode", choices=["bosonic", "fermionic"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--precision", type=int, default=20)
    fmt(p)
    return parser


# ---------------------------------------------------------------------------
# subcommands


def cmd_families(args) -> tuple[str, int]:
    if args.max_n < 0:
        raise UsageError("--max-n must be >= 0")
    table = family_table(args.kind, args.max_n, args.route)
    values = [str(v) for v in table.entries]
    if args.format == "json":
        return json.dumps(values) + "\n", EXIT_OK
    if args.format == "latex":
        sym = SYMBOLS[table.kind]
        lines = [f"{sym % n} &= {latex_expression(v)} \\\\" for n, v in enumerate(values)]
        return "\\begin{align*}\n" + "\n".join(lines) + "\n\\end{align*}\n", EXIT_OK
    report = Report(
        "families",
        {"kind": table.kind.value, "max_n": args.max_n, "route": table.route.value},
        [{"n": n, "value": v} for n, v in enumerate(values)],
        {"entries": len(values)},
    )
    return render(report, "text"), EXIT_OK


def _claim_list(raw: Sequence[str]) -> list[str] | None:
    ids = [c for chunk in raw for c in chunk.split(",") if c]
    if ids == ["all"]:
        return None
    unknown = [c for c in ids if c not in CLAIM_IDS]
    if unknown or not ids:
        raise UsageError(f"unknown claim id(s): {', '.join(unknown) or '(none)'}; "
                         f"known: all, {', '.join(CLAIM_IDS)}")
    return ids


def load_manifest(path) -> dict[tuple, Verdict]:
    if str(path) == "golden":
        path = golden_manifest_path()
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            if "claim" in rec:
                v = Verdict.from_record(rec)
                out[_manifest_key(v)] = v
    return out


def _manifest_key(v: Verdict) -> tuple:
    return (v.claim, v.variant, json.dumps(v.to_record()["params"]))


def diff_manifest(records: Sequence[Verdict], manifest: dict[tuple, Verdict]) -> list[str]:
    """Mismatch descriptions for records that are new or disagree with the manifest."""
    problems = []
    for v in records:
        old = manifest.get(_manifest_key(v))
        where = f"{v.claim}/{v.variant} {json.dumps(v.to_record()['params'])}"
        if old is None:
            problems.append(f"new: {where} {v.status} {v.residual}")
        elif (old.status, old.residual) != (v.status, v.residual):
            problems.append(f"changed: {where} {old.status} {old.residual} -> {v.status} {v.residual}")
    return problems


def cmd_verify(args) -> tuple[str, int]:
    claims = _claim_list(args.claims)
    if min(args.max_n, args.max_k, args.max_s) < 1:
        raise UsageError("--max-n, --max-k and --max-s must be >= 1")
    report = run_catalog(args.max_n, args.max_k, args.max_s, claims, workers=worker_count())
    text = render(report, args.format)
    if args.manifest:
        try:
            manifest = load_manifest(args.manifest)
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read manifest {args.manifest}: {exc}") from None
        problems = diff_manifest(report.records, manifest)
        if problems:
            for p in problems:
                print(p, file=sys.stderr)
            print(f"manifest mismatch: {len(problems)} record(s)", file=sys.stderr)
            return text, EXIT_MISMATCH
    return text, EXIT_OK


def cmd_lerch(args) -> tuple[str, int]:
    q = QValue(args.q).q
    closed = power_sum_closed(args.j)
    exact = closed.evaluate(q)
    partial = power_sum_truncated(args.j, q, args.terms)
    rec = {
        "j": args.j,
        "q": str(q),
        "terms": args.terms,
        "closed_form": str(closed),
        "closed_value": str(exact),
        "partial_sum": str(partial),
        "difference": str(exact - partial),
    }
    try:
        rec["tail_bound"] = str(power_sum_tail_bound(args.j, q, args.terms))
    except QidentError:
        rec["tail_bound"] = None
    if args.decimal:
        if args.decimal < 1:
            raise UsageError("--decimal needs at least one digit")
        rec["closed_decimal"] = _decimal(exact, args.decimal)
        rec["partial_decimal"] = _decimal(partial, args.decimal)
        rec["difference_decimal"] = _decimal(exact - partial, args.decimal)
    params = {"j": args.j, "q": str(q), "terms": args.terms}
    return render(Report("lerch", params, [rec], {"records": 1}), args.format), EXIT_OK


def cmd_zeta(args) -> tuple[str, int]:
    if args.n is not None:
        if any(v is not None for v in (args.s, args.q, args.terms)):
            raise UsageError("use either --n or --s/--q/--terms")
        z = qzeta_special(args.n)
        status = "HOLDS" if z.agrees else "FAILS"
        rec = {"n": args.n, "printed": str(z.printed), "oracle": str(z.oracle), "status": status}
        report = Report("zeta", {"n": args.n}, [rec], {status: 1})
        return render(report, args.format), EXIT_OK
    if None in (args.s, args.q, args.terms):
        raise UsageError("zeta needs --n, or all of --s, --q and --terms")
    part = qzeta_series(args.s, args.q, args.terms)
    rec = {
        "s": args.s,
        "q": str(args.q),
        "terms": args.terms,
        "partial_sum": str(part.value),
        "tail_bound": str(part.tail_bound),
    }
    params = {"q": str(args.q), "s": args.s, "terms": args.terms}
    return render(Report("zeta", params, [rec], {"records": 1}), args.format), EXIT_OK


def cmd_padic(args) -> tuple[str, int]:
    spec = SumSpec(args.p, args.mode, args.n, args.N, args.precision)
    rows = witt_convergence_report(spec)
    exact = sum(1 for r in rows if r.distance == "0")
    report = Report(
        "padic",
        {"mode": args.mode, "n": args.n, "N": args.N, "p": args.p, "precision": args.precision},
        rows,
        {"rows": len(rows), "exact_rows": exact},
    )
    return render(report, args.format), EXIT_OK


COMMANDS = {
    "families": cmd_families,
    "verify": cmd_verify,
    "lerch": cmd_lerch,
    "zeta": cmd_zeta,
    "padic": cmd_padic,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except QidentError as exc:
        print(f"qident: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    sys.stdout.write(text)
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
