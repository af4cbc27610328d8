"""Command-line entry point.

Exit codes: 0 Yes, 1 No, 2 Unknown, 64 usage error, 65 input parse error.
Every job prints one structured document; the text format wraps it in a
fenced ``json`` block after a short human summary.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time

from . import __version__
from .certify import (MalformedCertificate, document_for, extract_document, monoid_input,
                      verify_certificate)
from .cone import BoxTooLarge, DimensionTooLarge
from .decide import (DEFAULT_WORD_LENGTH, SubalgebraSpec, decide, qfc_from_finite_gap)
from .laurent import GF, LaurentSyntaxError, parse, parse_domain, render
from .monoid import FgMonoid, GapStatus
from .numsgp import NotMember, NotNumerical, NumericalSemigroup
from .oracle import (EXACT, BudgetExceeded, FuzzConfig, check_F2_witness, fuzz_monoid_algebra,
                     strong_qfc_witness_F2)
from .verdict import CounterexamplePair, no, unknown

EXIT_YES, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 64, 65
EXIT_FOR = {"Yes": EXIT_YES, "No": EXIT_NO, "Unknown": EXIT_UNKNOWN}


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def enum_budget() -> int:
    return int(os.environ.get("QFC_ENUM_BUDGET", 1_000_000))


# input grammars


_TUPLE = re.compile(r"\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)")


def parse_monoid(text: str) -> FgMonoid:
    """``"3,5"`` for n = 1 or ``"(2,0);(0,2)"`` for tuples."""
    text = text.strip()
    if not text:
        raise InputError("empty monoid specification")
    try:
        if "(" in text:
            parts = [p.strip() for p in text.split(";") if p.strip()]
            gens = []
            for p in parts:
                m = _TUPLE.fullmatch(p)
                if not m:
                    raise InputError(f"bad generator {p!r}")
                gens.append(tuple(int(x) for x in m.group(1).split(",")))
            return FgMonoid(gens)
        return FgMonoid.integers([int(x) for x in re.split(r"[,;\s]+", text) if x])
    except ValueError as exc:
        raise InputError(f"bad monoid specification: {exc}") from exc


def parse_box(text: str, n: int):
    """``"9"`` means [0,9]^n, ``"lo:hi"`` means [lo,hi]^n, comma-separate per coordinate."""
    parts = [p.strip() for p in text.split(",")]
    try:
        bounds = []
        for p in parts:
            if ":" in p:
                lo, hi = p.split(":")
                bounds.append((int(lo), int(hi)))
            else:
                bounds.append((0, int(p)))
    except ValueError as exc:
        raise InputError(f"bad box {text!r}") from exc
    if len(bounds) == 1:
        bounds *= n
    if len(bounds) != n:
        raise InputError(f"box has {len(bounds)} coordinates, expected {n}")
    if any(lo > hi for lo, hi in bounds):
        raise InputError("box lower bound exceeds upper bound")
    return tuple(lo for lo, _ in bounds), tuple(hi for _, hi in bounds)


def _read_input(args):
    sources = [s for s in (args.monoid, args.algebra, args.input) if s is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --monoid, --algebra, --input")
    if args.input is not None:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read().strip()
        except OSError as exc:
            raise InputError(str(exc)) from exc
        return ("algebra", text) if "x" in text else ("monoid", text)
    if args.monoid is not None:
        return "monoid", args.monoid
    return "algebra", args.algebra


def _subject(args):
    kind, text = _read_input(args)
    if kind == "monoid":
        return parse_monoid(text)
    try:
        domain = parse_domain(args.domain)
        return SubalgebraSpec.parse(text, domain, max_length=args.effort)
    except LaurentSyntaxError as exc:
        raise InputError(str(exc)) from exc
    except ValueError as exc:
        raise InputError(str(exc)) from exc


# output


def _summary(doc) -> list:
    lines = [f"command: {doc.get('command')}"]
    v = doc.get("verdict")
    if v:
        lines.append(f"{v['property']}: {v['answer']}")
        if v.get("certificate"):
            lines.append(f"certificate: {v['certificate']['kind']}")
        if v.get("witness"):
            lines.append(f"witness: {v['witness']['kind']}")
        for a in v.get("assumptions", []):
            lines.append(f"assumes: {a}")
        if v.get("reason"):
            lines.append(f"reason: {v['reason']}")
    for key in ("status", "frobenius", "genus", "valid", "shift"):
        if key in doc:
            lines.append(f"{key}: {doc[key]}")
    return lines


def emit(doc, fmt, out):
    if fmt == "auto":
        fmt = "text" if out.isatty() else "json"
    body = json.dumps(doc, indent=2, sort_keys=False)
    if fmt == "json":
        out.write(body + "\n")
    else:
        out.write("\n".join(_summary(doc)) + "\n\n```json\n" + body + "\n```\n")


# commands


def cmd_decide(args):
    subject = _subject(args)
    verdict = decide(args.property, subject)
    budgets = {"enum_budget": enum_budget()}
    if isinstance(subject, SubalgebraSpec):
        budgets.update(word_length=subject.max_length, max_dim=subject.max_dim)
    return document_for(verdict, subject, budgets=budgets), verdict.answer.value


def cmd_gaps(args):
    M = parse_monoid(args.monoid)
    box = parse_box(args.box, M.n)
    report = M.gap_set(box, enum_budget())
    doc = {"tool": "qfctool", "input": monoid_input(M), **report.to_dict()}
    if args.certify and report.status in (GapStatus.EMPTY, GapStatus.FINITE_EXACT):
        doc["verdict"] = qfc_from_finite_gap(M, report).to_dict()
    return doc, None


def cmd_frobenius(args):
    M = parse_monoid(args.monoid)
    if M.n != 1:
        raise InputError("numerical semigroups live in Z")
    try:
        S = NumericalSemigroup([g[0] for g in M.generators])
    except NotNumerical as exc:
        return {"tool": "qfctool", "input": monoid_input(M), "numerical": False,
                "gcd": exc.d}, "No"
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return {"tool": "qfctool", "input": monoid_input(M), "numerical": True,
            "frobenius": S.frobenius, "genus": S.genus, "gaps": list(S.gaps)}, None


def cmd_apery(args):
    M = parse_monoid(args.monoid)
    try:
        S = NumericalSemigroup([g[0] for g in M.generators])
        ap = S.apery_set(args.m)
    except (NotNumerical, NotMember, ValueError) as exc:
        raise InputError(str(exc)) from exc
    return {"tool": "qfctool", "input": monoid_input(M), "m": args.m, "apery": ap,
            "frobenius": S.frobenius}, None


def cmd_verify(args):
    try:
        if args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from exc
    try:
        doc = extract_document(text)
        ok = verify_certificate(doc)
    except MalformedCertificate as exc:
        raise InputError(f"malformed certificate: {exc}") from exc
    return {"tool": "qfctool", "valid": ok}, "Yes" if ok else "No"


def cmd_fuzz(args):
    M = parse_monoid(args.monoid)
    box = parse_box(args.box, M.n)
    cfg = FuzzConfig(box, args.property, args.prime, args.radius,
                     max_counterexamples=args.max_counterexamples)
    report = fuzz_monoid_algebra(M, cfg)
    inp = {**monoid_input(M), "prime": args.prime}
    doc = {"tool": "qfctool", "input": inp, "radius": max(cfg.shift_radius, 32),
           "report": report.to_dict(),
           "budgets": {"pair_budget": cfg.pair_budget, "poly_budget": cfg.poly_budget}}
    proven = [c for c in report.counterexamples if c.obstruction == EXACT]
    if proven:
        c = proven[0]
        v = no(args.property, CounterexamplePair(render(c.f), render(c.g), c.obstruction),
               reason=c.detail)
    else:
        v = unknown(args.property, "no proven counterexample in the box")
    doc["verdict"] = v.to_dict()
    return doc, v.answer.value


def cmd_witness_f2(args):
    try:
        f = parse(args.poly, 1, GF(2))
    except LaurentSyntaxError as exc:
        raise InputError(str(exc)) from exc
    if f.is_zero():
        raise InputError("the polynomial must be nonzero")
    if max(abs(e[0]) for e in f.terms) > 16:
        raise InputError("support must lie within [-16, 16]")
    w = strong_qfc_witness_F2(f)
    return {"tool": "qfctool", "input": {"poly": render(f), "field": "GF(2)"},
            "shift": w.shift,
            "factors": [{"factor": render(g), "exponent": e} for g, e in w.factors],
            "product": render(w.product()), "valid": check_F2_witness(f, w)}, None


def build_parser():
    p = _Parser(prog="qfctool", description="Decide fc/pfc/qfc/retract/normality of "
                "subalgebras of Laurent polynomial rings, with certificates.")
    p.add_argument("--version", action="version", version=f"qfctool {__version__}")
    p.add_argument("--format", choices=("text", "json", "auto"), default="auto")
    # --format is accepted before or after the subcommand
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "auto"), default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    d = sub.add_parser("decide", parents=[common],
                       help="decide a property of a monoid algebra or subalgebra")
    d.add_argument("property", choices=("qfc", "pfc", "fc", "retract", "normal"))
    d.add_argument("--monoid")
    d.add_argument("--algebra", help="generators in the polynomial grammar, ';'-separated")
    d.add_argument("--input", help="file holding a monoid or algebra specification")
    d.add_argument("--domain", default="QQ", help="QQ, ZZ or GF(p)")
    d.add_argument("--effort", type=int, default=DEFAULT_WORD_LENGTH,
                   help="maximal word length for monomial discovery")
    d.set_defaults(func=cmd_decide)

    g = sub.add_parser("gaps", parents=[common], help="gap set of a monoid within a box")
    g.add_argument("--monoid", required=True)
    g.add_argument("--box", default="10")
    g.add_argument("--certify", action="store_true",
                   help="attach a finite-gap qfc certificate when the status allows it")
    g.set_defaults(func=cmd_gaps)

    f = sub.add_parser("frobenius", parents=[common], help="Frobenius number, genus and gaps")
    f.add_argument("--monoid", required=True)
    f.set_defaults(func=cmd_frobenius)

    a = sub.add_parser("apery", parents=[common], help="Apery set with respect to m")
    a.add_argument("--monoid", required=True)
    a.add_argument("--m", type=int, required=True)
    a.set_defaults(func=cmd_apery)

    c = sub.add_parser("certificate", parents=[common], help="certificate tools")
    csub = c.add_subparsers(dest="action", parser_class=_Parser)
    cv = csub.add_parser("verify", parents=[common], help="re-check a verdict document")
    cv.add_argument("file", help="document path, or - for stdin")
    cv.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", parents=[common], help="brute-force checks over finite fields")
    osub = o.add_subparsers(dest="action", parser_class=_Parser)
    of = osub.add_parser("fuzz", parents=[common], help="search factorization counterexamples")
    of.add_argument("--monoid", required=True)
    of.add_argument("--box", default="-4:8")
    of.add_argument("--prime", type=int, default=2)
    of.add_argument("--property", choices=("qfc", "pfc", "fc"), default="qfc")
    of.add_argument("--radius", type=int)
    of.add_argument("--max-counterexamples", type=int, default=10)
    of.set_defaults(func=cmd_fuzz)
    ow = osub.add_parser("witness-f2", parents=[common],
                         help="shift witness in the F_2 algebra of irreducibles")
    ow.add_argument("--poly", required=True)
    ow.set_defaults(func=cmd_witness_f2)
    return p


def run(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("missing command")
        t0 = time.perf_counter()
        doc, answer = args.func(args)
        doc = {"command": " ".join(x for x in (args.command, getattr(args, "action", None)) if x),
               **doc, "timings": {"seconds": round(time.perf_counter() - t0, 4)}}
        doc.setdefault("budgets", {"enum_budget": enum_budget()})
        emit(doc, args.format, out)
        return EXIT_FOR.get(answer, EXIT_YES) if answer else EXIT_YES
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        parser.print_usage(err)
        return EXIT_USAGE
    except (InputError, BoxTooLarge, DimensionTooLarge, BudgetExceeded) as exc:
        err.write(f"input error: {exc}\n")
        return EXIT_INPUT


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
