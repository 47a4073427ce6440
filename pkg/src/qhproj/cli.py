"""Command-line front end.

    qhproj present  split:n=3,m=1,2
    qhproj gw-table split:n=4,m=1,1,3 --format json
    qhproj verify   tangent:n=2
    qhproj reduce   split:n=3,m=1,2 "xi^2"
    qhproj sweep    --sweep n=6,r=5,mmax=5 --jobs 4

Exit status: 0 on success, 1 when a check fails or a result would be
conjectural without --force, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations_with_replacement

from .classical import BundleError, BundleSpec, PresentationError, classical_presentation, segre_classes
from .exact_algebra import IntPoly, binomial_power_series
from .fano import HypothesisError, extremal_classes, hypothesis_report
from .gw import METHODS, gw_table
from .quantum import quantum_normal_form, quantum_presentation, verify_presentation

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_SPLIT_RE = re.compile(r"split:n=(-?\d+),m=(-?\d+(?:,-?\d+)*)")
_TANGENT_RE = re.compile(r"tangent:n=(-?\d+)")


class UsageError(ValueError):
    pass


def parse_bundle(spec: str, notices: list[str] | None = None) -> BundleSpec:
    """Parse ``split:n=<int>,m=<int>,...`` or ``tangent:n=<int>``.

    Unsorted m is sorted and a twist suggestion is issued when min m != 1;
    both go to ``notices`` (stderr when None).
    """
    def notice(msg):
        if notices is None:
            print(f"notice: {msg}", file=sys.stderr)
        else:
            notices.append(msg)

    text = spec.strip().replace(" ", "")
    if mt := _TANGENT_RE.fullmatch(text):
        n = int(mt.group(1))
        if n < 2:
            raise UsageError(f"tangent bundle needs n >= 2, got n = {n}")
        return BundleSpec.tangent(n)
    ms = _SPLIT_RE.fullmatch(text)
    if not ms:
        raise UsageError(f"cannot parse bundle spec {spec!r}; expected split:n=<int>,m=<int>(,<int>)* "
                         "or tangent:n=<int>")
    n = int(ms.group(1))
    m = [int(x) for x in ms.group(2).split(",")]
    if n < 1:
        raise UsageError(f"n must be positive, got {n}")
    if any(x <= 0 for x in m):
        raise UsageError(f"every m_i must be positive, got {m}")
    if len(m) < 2:
        raise UsageError(f"rank r = {len(m)} < 2")
    if m != sorted(m):
        m = sorted(m)
        notice(f"splitting degrees sorted to m = {','.join(map(str, m))}")
    if m[0] != 1:
        shifted = ",".join(str(x - m[0] + 1) for x in m)
        notice(f"min m_i = {m[0]} != 1; P(V) is unchanged by twisting with O({1 - m[0]}), "
               f"try split:n={n},m={shifted}")
    return BundleSpec.split(n, m)


def parse_sweep(text: str) -> dict[str, int]:
    box = {"n": 6, "r": 5, "mmax": 5}
    if not text:
        return box
    for part in text.split(","):
        key, _, val = part.partition("=")
        if key not in box or not val.lstrip("-").isdigit():
            raise UsageError(f"bad sweep bound {part!r}; expected n=..,r=..,mmax=..")
        box[key] = int(val)
    return box


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, json payload, text lines)


def _refuse_conjectural(pres, force: bool):
    if pres.provenance == "batyrev-conjectural" and not force:
        raise HypothesisError(f"{pres.bundle}: the product formula is unproved outside "
                              f"c1 < min(2r, (n+1+2r)/2, (2n+2+r)/2); rerun with --force")


def cmd_present(bundle: BundleSpec, args):
    hyp = hypothesis_report(bundle)
    classical = classical_presentation(bundle)
    quantum = quantum_presentation(bundle)
    _refuse_conjectural(quantum, args.force)
    ext = extremal_classes(bundle)
    order = bundle.n if args.order is None else args.order
    payload = {"bundle": bundle.to_dict(), "classical": classical.to_dict(), "quantum": quantum.to_dict(),
               "extremal": {"A1": list(ext.A1), "A2": list(ext.A2), "A2_extremal": ext.a2_is_extremal}}
    lines = [f"bundle     {bundle}  (r = {bundle.r}, c1 = {bundle.c1})", "classical"]
    lines += [f"  {rel.text()}" for rel in classical.relations]
    lines.append(f"quantum    [{quantum.kind}, {quantum.provenance}]")
    lines += [f"  {rel.display or rel.text()}" for rel in quantum.relations]
    if bundle.kind == "split":
        seg = segre_classes(bundle, order)
        payload["segre"] = list(seg)
        lines.append(f"segre      {list(seg)}")
    lines.append(f"extremal   A1 = {ext.A1}, A2 = {ext.A2} (extremal: {ext.a2_is_extremal})")
    lines.append("hypotheses")
    lines += [f"  {line}" for line in hyp.lines()]
    return EXIT_OK, payload, lines


def cmd_gw_table(bundle: BundleSpec, args):
    if bundle.kind != "split":
        raise BundleError("the W_i table is defined for split bundles")
    table = gw_table(bundle, METHODS)
    if table.conjectural and not args.force:
        raise HypothesisError(f"{bundle}: outside c1 < min(2r, (n+1+2r)/2) the values are conjectural; "
                              "rerun with --force")
    payload = table.to_dict()
    lines = [f"bundle {bundle}", f"W = {table.values}" + ("  (conjectural)" if table.conjectural else "")]
    for e in table.entries:
        vals = "  ".join(f"{k}={v}" for k, v in e.methods.items())
        lines.append(f"  W_{e.i} = {e.value:>6}   {vals}   {'agree' if e.agree else 'DISAGREE'}")
    if args.order is not None:
        series = binomial_power_series([(m, m - 2) for m in bundle.m], args.order)
        payload["series"] = list(series.coefficients)
        lines.append(f"series {series.to_text()}")
    return (EXIT_OK if table.agree else EXIT_FAIL), payload, lines


def _verify_one(bundle: BundleSpec, force: bool):
    pres = quantum_presentation(bundle)
    _refuse_conjectural(pres, force)
    report = verify_presentation(pres, bundle)
    payload = report.to_dict()
    ok = report.passed
    if bundle.kind == "split":
        table = gw_table(bundle, METHODS)
        payload["gw"] = table.to_dict()
        ok = ok and table.agree
    payload["passed"] = ok
    return ok, payload


def cmd_verify(bundle: BundleSpec, args):
    ok, payload = _verify_one(bundle, args.force)
    lines = [f"bundle {bundle}  kind {payload['kind']}  rank {payload['rank']}"]
    lines += [f"  {c['status']:<4}  {c['name']:<17} {c['detail']}" for c in payload["checks"]]
    if "gw" in payload:
        agree = all(e["agree"] for e in payload["gw"]["values"])
        values = [e["value"] for e in payload["gw"]["values"]]
        lines.append(f"  {'pass' if agree else 'fail'}  {'w_agreement':<17} W = {values} by {len(METHODS)} methods")
    lines.append("PASS" if ok else "FAIL")
    return (EXIT_OK if ok else EXIT_FAIL), payload, lines


def cmd_reduce(bundle: BundleSpec, args):
    pres = quantum_presentation(bundle)
    _refuse_conjectural(pres, args.force)
    try:
        p = IntPoly.parse(args.poly)
    except (ValueError, SyntaxError) as exc:
        raise UsageError(f"cannot parse polynomial {args.poly!r}: {exc}") from None
    nf = quantum_normal_form(p, pres)
    payload = {"bundle": bundle.to_dict(), "input": p.to_text(), **nf.to_dict()}
    return EXIT_OK, payload, [nf.poly.to_text()]


def sweep_bundles(box: dict[str, int], force: bool = False) -> list[BundleSpec]:
    """Split bundles with m_1 = 1 in the box (proved range unless ``force``), plus tangent bundles."""
    out = []
    for n in range(1, box["n"] + 1):
        for r in range(2, box["r"] + 1):
            for rest in combinations_with_replacement(range(1, box["mmax"] + 1), r - 1):
                b = BundleSpec.split(n, (1,) + rest)
                if n + 1 + r - b.c1 < 1:
                    continue
                if force or hypothesis_report(b)["product_formula_proved"]:
                    out.append(b)
        if n >= 2:
            out.append(BundleSpec.tangent(n))
    return sorted(out, key=lambda b: b.label)


def _sweep_worker(args):
    bundle, force = args
    try:
        ok, payload = _verify_one(bundle, force)
    except (BundleError, HypothesisError, PresentationError) as exc:
        return bundle.label, False, str(exc)
    failed = [c["name"] for c in payload["checks"] if c["status"] == "fail"]
    if "gw" in payload and not all(e["agree"] for e in payload["gw"]["values"]):
        failed.append("w_agreement")
    return bundle.label, ok, ",".join(failed)


def cmd_sweep(args):
    box = parse_sweep(args.sweep)
    bundles = sweep_bundles(box, args.force)
    work = [(b, args.force) for b in bundles]
    if args.jobs and args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_sweep_worker, work, chunksize=8))
    else:
        results = [_sweep_worker(w) for w in work]
    results.sort()
    failures = [(label, why) for label, ok, why in results if not ok]
    payload = {"box": box, "count": len(results), "failed": len(failures),
               "results": [{"bundle": label, "passed": ok, "failed_checks": why} for label, ok, why in results]}
    lines = [f"{'pass' if ok else 'FAIL'}  {label}" + (f"  [{why}]" if why else "") for label, ok, why in results]
    lines.append(f"{len(results) - len(failures)}/{len(results)} bundles passed")
    return (EXIT_OK if not failures else EXIT_FAIL), payload, lines


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--force", action="store_true",
                        help="compute outside the proved hypotheses, tagging results conjectural")
    common.add_argument("--order", type=int, default=None, help="series truncation order")

    parser = argparse.ArgumentParser(prog="qhproj", description="Quantum cohomology of projective bundles over P^n.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (("present", "classical and quantum presentations"),
                       ("gw-table", "the coefficients W_i by every method"),
                       ("verify", "structural checks on the quantum presentation")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("bundle")
    p = sub.add_parser("reduce", parents=[common], help="quantum normal form of a polynomial")
    p.add_argument("bundle")
    p.add_argument("poly")
    p = sub.add_parser("sweep", parents=[common], help="verify every bundle in a parameter box")
    p.add_argument("--sweep", default="", help="bounds n=..,r=..,mmax=.. (default 6,5,5)")
    p.add_argument("--jobs", type=int, default=1)
    return parser


_COMMANDS = {"present": cmd_present, "gw-table": cmd_gw_table, "verify": cmd_verify, "reduce": cmd_reduce}


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "sweep":
            code, payload, lines = cmd_sweep(args)
        else:
            bundle = parse_bundle(args.bundle)
            code, payload, lines = _COMMANDS[args.command](bundle, args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BundleError, HypothesisError, PresentationError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.format == "json":
        print(json.dumps(payload, indent=2), file=out)
    else:
        print("\n".join(lines), file=out)
    return code


def main() -> None:
    sys.exit(run())
