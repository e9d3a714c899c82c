"""Command-line front end.

Exit codes: 0 every check passed, 1 a law or theorem check failed, 2 a parse
or usage error, 3 a census size cap was exceeded.

``--json-lines`` on ``check`` prints one JSON object per report with keys
``structure``, ``kind``, ``axiom``, ``passed``, ``informational``,
``witness`` (a list or null), ``detail`` and ``unit`` (a list or null).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import census, correspond, fixtures, frobenius, groupoid, weakmonoid
from .errors import CapExceeded, IsoFailure, PreconditionError, RelcatError
from .groupoid import Semigroupoid
from .report import CheckReport, all_pass, format_witness
from .structfile import ParseError, StructureFile, dumps, kind_of, load

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _as_sgpd(g) -> Semigroupoid:
    return Semigroupoid(g.objects, g.arrows, g.s, g.t, g.comp)


# kind -> (decl kinds accepted, adapter)
_SOURCES = {
    "frob": (("frob",), lambda x: x),
    "hstar": (("hstar", "frob"), frobenius.as_hstar),
    "groupoid": (("groupoid",), lambda x: x),
    "sgpd": (("sgpd", "groupoid"), lambda x: x if type(x) is Semigroupoid else _as_sgpd(x)),
    "weak": (("weak",), lambda x: x),
    "weakstar": (("weakstar",), lambda x: x),
    "cyclic": (("cyclic",), lambda x: x),
    "monoid": (("monoid",), lambda x: x),
}


def _select(sf: StructureFile, kind: str) -> list[tuple[str, object]]:
    kinds, adapt = _SOURCES[kind]
    found = [(n, adapt(o)) for n, o in sf.decls.items() if kind_of(o) in kinds]
    if not found:
        raise UsageError(f"no {kind} declaration in file")
    return found


def _load(path: str) -> StructureFile:
    try:
        return load(path)
    except OSError as exc:
        raise UsageError(str(exc)) from exc


def run_checks(kind: str, x, strict: bool = False) -> list[CheckReport]:
    if kind == "frob":
        reports = frobenius.check_frobenius(x)
        if strict and all_pass(reports):
            reports.append(correspond.literal_unit_relation(x))
        return reports
    if kind == "hstar":
        return frobenius.check_hstar(x)
    if kind == "groupoid":
        return groupoid.check_groupoid(x)
    if kind == "sgpd":
        reports = groupoid.check_lcr(x)
        if strict and all_pass(reports[:3]):
            reports.append(groupoid.check_local_cancellativity(x, literal=True))
        return reports
    if kind == "weak":
        return weakmonoid.check_weak_monoid(x)
    if kind == "weakstar":
        return weakmonoid.check_weak_star(x)
    if kind == "cyclic":
        return weakmonoid.check_cyclic(x)
    raise UsageError(f"unknown kind {kind}")


def _report_lines(r: CheckReport, explain: bool) -> list[str]:
    tag = " (informational)" if r.informational else ""
    line = f"  {r.axiom}: {r.verdict}{tag}"
    if r.unit is not None and r.passed:
        line += f"  unit={{{', '.join(r.unit.sorted())}}}"
    if r.witness is not None:
        line += f"  witness={format_witness(r.witness)}"
    out = [line]
    if explain and not r.passed and r.detail:
        out.append(f"    {r.detail}")
    return out


def _json_report(name: str, kind: str, r: CheckReport) -> str:
    def plain(w):
        if isinstance(w, (tuple, list)):
            return [plain(v) for v in w]
        if isinstance(w, (set, frozenset)):
            return sorted(map(str, w))
        return w

    return json.dumps({
        "structure": name, "kind": kind, "axiom": r.axiom, "passed": r.passed,
        "informational": r.informational, "witness": plain(r.witness), "detail": r.detail,
        "unit": list(r.unit.sorted()) if r.unit is not None else None,
    })


def cmd_check(args, out) -> int:
    sf = _load(args.file)
    ok = True
    for name, x in _select(sf, args.kind):
        reports = run_checks(args.kind, x, strict=args.strict)
        passed = all_pass(reports)
        ok &= passed
        if args.json_lines:
            for r in reports:
                print(_json_report(name, args.kind, r), file=out)
            continue
        print(f"{name} ({args.kind}): {'PASS' if passed else 'FAIL'}", file=out)
        for r in reports:
            print("\n".join(_report_lines(r, args.explain)), file=out)
    return EXIT_OK if ok else EXIT_FAIL


_CONVERSIONS = {
    "frob-to-gpd": ("frob", correspond.frob_to_groupoid, "gpd"),
    "gpd-to-frob": ("groupoid", correspond.groupoid_to_frob, "frob"),
    "sgpd-to-hstar": ("sgpd", correspond.sgpd_to_hstar, "hstar"),
    "hstar-to-sgpd": ("hstar", correspond.hstar_to_sgpd, "sgpd"),
}


def cmd_convert(args, out) -> int:
    source, fn, suffix = _CONVERSIONS[args.direction]
    sf = _load(args.file)
    results = {}
    for name, x in _select(sf, source):
        try:
            results[f"{name}_{suffix}"] = fn(x)
        except PreconditionError as exc:
            print(f"{name}: {exc}", file=out)
            return EXIT_FAIL
    text = dumps(results)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        print(f"wrote {len(results)} structure(s) to {args.output}", file=out)
    else:
        out.write(text)
    return EXIT_OK


def cmd_roundtrip(args, out) -> int:
    source = {"frob": "frob", "gpd": "groupoid", "sgpd": "sgpd"}[args.kind]
    sf = _load(args.file)
    ok = True
    for name, x in _select(sf, source):
        try:
            if args.kind == "frob":
                same = correspond.roundtrip_frob(x)
                msg = "identical" if same else "differs"
            elif args.kind == "gpd":
                correspond.roundtrip_groupoid(x)
                same, msg = True, "isomorphic via the unit-object map"
            else:
                r = correspond.roundtrip_sgpd(x)
                same = r.passed
                obmap = r.extra["object_map"] if r.extra else {}
                msg = r.detail or "objects " + ", ".join(f"{k}->{v}" for k, v in obmap.items())
        except (PreconditionError, IsoFailure) as exc:
            same, msg = False, str(exc)
        ok &= same
        print(f"{name}: {'PASS' if same else 'FAIL'}: {msg}", file=out)
    return EXIT_OK if ok else EXIT_FAIL


def describe(x) -> str:
    """One-line summary of a census structure."""
    if isinstance(x, Semigroupoid):
        ends = " ".join(f"{f}:{x.s[f]}->{x.t[f]}" for f in x.arrows)
        comp = " ".join(f"{a}·{b}={c}" for (a, b), c in sorted(x.comp.items()))
        return f"[{ends}] {comp}".rstrip()
    return " ".join(f"{h}·{g}={f}" for (h, g), f in x.m.pairs) or "(empty)"


_ENUMERATORS = {
    "frob": lambda n, w: census.enumerate_frobenius(n, workers=w),
    "hstar": lambda n, w: census.enumerate_hstar(n, workers=w),
    "gpd": lambda n, w: census.enumerate_groupoids(n),
    "lcr-sgpd": lambda n, w: census.enumerate_lcr_semigroupoids(n),
}


def cmd_enumerate(args, out) -> int:
    result = _ENUMERATORS[args.kind](args.size, args.workers)
    line = f"{args.kind} n={args.size}: {result.count} structures ({result.elapsed:.2f}s)"
    if args.iso:
        line += f", {census.iso_classes(result)} isomorphism classes"
    print(line, file=out)
    if not args.count_only:
        for i, x in enumerate(result.structures):
            print(f"  {i}: {describe(x)}", file=out)
    if args.emit:
        census.emit(result, args.emit)
    return EXIT_OK


def cmd_crosscheck(args, out) -> int:
    fn = census.cross_check_theorem1 if args.which == "thm1" else census.cross_check_theorems23
    report = fn(args.size)
    print(report, file=out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_quotient(args, out) -> int:
    sf = _load(args.file)
    name, M = _select(sf, "monoid")[0]
    p = args.projector
    if p not in M.X:
        raise UsageError(f"{p!r} is not an element of {M.X.name}")
    base = weakmonoid.check_monoid(M)
    if not all_pass(base):
        print(f"{name}: not a monoid", file=out)
        for r in base:
            print("\n".join(_report_lines(r, True)), file=out)
        return EXIT_FAIL
    try:
        cand = weakmonoid.monoid_projector_to_weak(M, p)
        Q = weakmonoid.quotient_by_projector(M, p)
    except (ValueError, RelcatError) as exc:
        print(f"{name}: {type(exc).__name__}: {exc}", file=out)
        return EXIT_FAIL
    print(f"{name} with projector {p}: weak-monoid laws of (X, {{{p}}}, m) (informational)", file=out)
    for r in weakmonoid.check_weak_monoid(cand):
        print("\n".join(_report_lines(r, True)), file=out)
    reports = weakmonoid.check_monoid(Q)
    ok = all_pass(reports)
    print(f"quotient classes: {', '.join('{' + c.replace('~', ', ') + '}' for c in Q.X)}", file=out)
    print(f"quotient unit: {{{Q.one.replace('~', ', ')}}}", file=out)
    for a in Q.X:
        print("  " + "  ".join(f"{a}·{b}={Q(a, b)}" for b in Q.X), file=out)
    for r in reports:
        print("\n".join(_report_lines(r, True)), file=out)
    print(f"quotient monoid: {'PASS' if ok else 'FAIL'}", file=out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_fixtures(args, out) -> int:
    written = fixtures.emit(args.emit)
    print(f"wrote {len(written)} files to {args.emit}", file=out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="relcat", description="Finite relational algebra checker.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="check the laws of every structure of a kind")
    c.add_argument("kind", choices=["frob", "hstar", "groupoid", "sgpd", "weak", "weakstar", "cyclic"])
    c.add_argument("file")
    c.add_argument("--strict", action="store_true", help="add the literal readings as informational reports")
    c.add_argument("--explain", action="store_true", help="print the instantiated equation for failures")
    c.add_argument("--json-lines", action="store_true", help="one JSON object per report")
    c.set_defaults(fn=cmd_check)

    c = sub.add_parser("convert", help="apply a construction")
    c.add_argument("direction", choices=list(_CONVERSIONS))
    c.add_argument("file")
    c.add_argument("-o", "--output")
    c.set_defaults(fn=cmd_convert)

    c = sub.add_parser("roundtrip", help="convert there and back and compare")
    c.add_argument("kind", choices=["frob", "gpd", "sgpd"])
    c.add_argument("file")
    c.set_defaults(fn=cmd_roundtrip)

    c = sub.add_parser("enumerate", help="exhaustive census on a labeled carrier")
    c.add_argument("kind", choices=list(_ENUMERATORS))
    c.add_argument("--size", type=int, required=True)
    c.add_argument("--count-only", action="store_true")
    c.add_argument("--emit", metavar="DIR")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--iso", action="store_true", help="also count isomorphism classes")
    c.set_defaults(fn=cmd_enumerate)

    c = sub.add_parser("crosscheck", help="compare censuses through the constructions")
    c.add_argument("which", choices=["thm1", "thm23"])
    c.add_argument("--size", type=int, required=True)
    c.set_defaults(fn=cmd_crosscheck)

    c = sub.add_parser("quotient", help="quotient a commutative monoid by a projector")
    c.add_argument("file")
    c.add_argument("--projector", required=True)
    c.set_defaults(fn=cmd_quotient)

    c = sub.add_parser("fixtures", help="write the fixture corpus and its manifest")
    c.add_argument("--emit", required=True, metavar="DIR")
    c.set_defaults(fn=cmd_fixtures)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=err)
        return EXIT_CAP
