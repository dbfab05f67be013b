"""``contentlab`` command line.

Exit status: 0 on success or a passing suite, 1 when a suite finds a
violation (or a search hits an open-question candidate), 2 on usage, parse
or cap errors.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import harness
from .algebra import DEFAULT_MAX_ALG, content
from .descriptors import parse_algebra, parse_element, parse_ring
from .errors import ContentLabError
from .finring import DEFAULT_MAX_RING
from .ideals import FAMILIES
from .properties import (
    CHECKERS,
    DEFAULT_NMAX,
    Verdict,
    has_fidel_A,
    has_property_A,
    is_content_algebra,
    is_residually_mccoy,
)

PROPERTY_ALIASES = {
    "weak_content": "weak_content_radical",
    "content": "content_algebra",
    "ohm_rush": "ohm_rush_consistency",
    "residually_mccoy": None,  # resolved with --family
}
RING_PROPERTIES = {"property_A": has_property_A, "fidel_A": has_fidel_A}
PROPERTY_NAMES = sorted(set(CHECKERS) | set(PROPERTY_ALIASES) | set(RING_PROPERTIES))


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-ring", type=int, default=DEFAULT_MAX_RING)
    common.add_argument("--max-alg", type=int, default=DEFAULT_MAX_ALG)
    common.add_argument("--nmax", type=int, default=DEFAULT_NMAX)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    instance = argparse.ArgumentParser(add_help=False)
    instance.add_argument("--base", required=True, help='ring descriptor, e.g. "trunc(Z/2,4)"')
    instance.add_argument("--alg", required=True, help='algebra descriptor, e.g. "quad(x^3)"')

    corpus = argparse.ArgumentParser(add_help=False)
    corpus.add_argument("--moduli", type=_int_list, default=harness.DEFAULT_MODULI)
    corpus.add_argument("--depths", type=_int_list, default=harness.DEFAULT_DEPTHS)
    corpus.add_argument("--groups", type=_int_list, default=harness.DEFAULT_GROUPS)
    corpus.add_argument("--composite", action="append", dest="composites", metavar="RING",
                        help="extra composite base (repeatable); replaces the default composites")
    corpus.add_argument("--no-quad", action="store_true")
    corpus.add_argument("--monoid", action="append", default=[], metavar="PATH")
    corpus.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="contentlab", description="Decide content-type properties of finite free algebras.")
    parser.add_argument("-v", "--verbose", action="store_true")
    verbs = parser.add_subparsers(dest="verb", required=True)

    verbs.add_parser("analyze", parents=[common, instance], help="full property report for one instance")
    p = verbs.add_parser("content", parents=[common, instance], help="content ideal of an element")
    p.add_argument("--elem", required=True)
    p = verbs.add_parser("check", parents=[common, instance], help="one property verdict")
    p.add_argument("property", choices=PROPERTY_NAMES)
    p.add_argument("--family", choices=FAMILIES, default="all")
    verbs.add_parser("verify-theorems", parents=[common, corpus], help="run the theorem suite on a corpus")
    p = verbs.add_parser("verify-example1", parents=[common], help="finite cusp example over F2[x]/(x^N)")
    p.add_argument("--depth", type=_int_list, default=(4,), help="truncation depth(s) N >= 4, comma-separated")
    p = verbs.add_parser("search", parents=[common, corpus], help="first corpus instance matching a predicate")
    p.add_argument("predicate", help="named predicate or expression like 'mccoy & !weak_content'")
    return parser


def _instance(args) -> harness.Instance:
    base = parse_ring(args.base, args.max_ring)
    return harness.Instance(base, parse_algebra(args.alg, base, args.max_alg))


def _corpus(args) -> harness.Corpus:
    params = harness.CorpusParams(
        moduli=args.moduli,
        depths=args.depths,
        quad=not args.no_quad,
        groups=args.groups,
        monoids=tuple(args.monoid),
        composites=tuple(args.composites) if args.composites is not None else harness.DEFAULT_COMPOSITES,
        max_ring=args.max_ring,
        max_alg=args.max_alg,
        seed=args.seed,
    )
    return harness.generate_corpus(params)


def format_witness(witness: dict | None) -> str:
    if not witness:
        return ""
    return ", ".join(f"{k}={v}" for k, v in harness.render(witness).items())


def format_verdict(verdict: Verdict) -> str:
    text = "true" if verdict.holds else "false"
    if not verdict.holds and verdict.witness:
        text += f"; witness {format_witness(verdict.witness)}"
    return text


def _emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=False))
    else:
        print(text)


def cmd_analyze(args) -> int:
    report = harness.full_report(_instance(args), args.nmax)
    if report.incomplete:
        print(f"incomplete report: {report.incomplete}", file=sys.stderr)
        return 2
    lines = [report.descriptor]
    width = max(map(len, report.verdicts))
    for name, verdict in report.verdicts.items():
        lines.append(f"  {name:<{width}}  {format_verdict(verdict)}")
    for name in ("property_A", "fidel_A"):
        lines.append(f"  {name:<{width}}  {format_verdict(report.ring_facts[name])}")
    lines.append(f"  {'spectrum_size':<{width}}  {report.ring_facts['spectrum_size']}")
    lines.append(f"  {'consistent':<{width}}  {str(report.consistent).lower()}")
    for bad in report.inconsistencies:
        lines.append(f"  INCONSISTENT {bad['clause']}: {harness.render(bad['verdicts'])}")
    _emit(args, harness.report_to_json(report), "\n".join(lines))
    return 0 if report.consistent else 1


def cmd_content(args) -> int:
    inst = _instance(args)
    c = content(parse_element(args.elem, inst.algebra))
    _emit(args, {"schema_version": harness.SCHEMA_VERSION, "element": args.elem, "content": str(c)}, str(c))
    return 0


def cmd_check(args) -> int:
    inst = _instance(args)
    name = args.property
    if name in RING_PROPERTIES:
        verdict = RING_PROPERTIES[name](inst.base)
    elif name == "residually_mccoy":
        name = f"residually_mccoy_{args.family}"
        verdict = is_residually_mccoy(inst.algebra, args.family)
    else:
        name = PROPERTY_ALIASES.get(name) or name
        if name == "content_algebra":
            verdict = is_content_algebra(inst.algebra, args.nmax)
        else:
            verdict = CHECKERS[name](inst.algebra)
    payload = {
        "schema_version": harness.SCHEMA_VERSION,
        "descriptor": {"base": inst.base.descriptor, "algebra": inst.algebra.descriptor},
        "property": name,
        "holds": verdict.holds,
        "witness": harness.render(verdict.witness) if verdict.witness else None,
    }
    _emit(args, payload, format_verdict(verdict))
    return 0


def cmd_verify_theorems(args) -> int:
    corpus = _corpus(args)
    summary = harness.verify_theorem_suite(corpus, args.nmax, args.seed)
    lemmas = harness.verify_localization_lemmas(corpus)
    if args.json:
        payload = harness.summary_to_json(summary)
        payload["localization"] = {
            "unit_mismatches": lemmas.unit_localization_mismatches,
            "globalization_violations": lemmas.globalization_violations,
        }
        print(json.dumps(payload))
    else:
        print(summary.summary_line())
        for group, count in summary.counts().items():
            print(f"  {group}: {count}")
        print(f"  localization_units: {len(lemmas.unit_localization_mismatches)}")
        print(f"  localization_global: {len(lemmas.globalization_violations)}")
    for v in summary.violations:
        print(f"violation: {v['instance']}: {v['clause']} {harness.render(v.get('verdicts', {}))} "
              f"{harness.render(v.get('witnesses', {}))}", file=sys.stderr)
    for desc in lemmas.unit_localization_mismatches + lemmas.globalization_violations:
        print(f"localization violation: {desc}", file=sys.stderr)
    return 0 if summary.passed and lemmas.passed else 1


def cmd_verify_example1(args) -> int:
    status = 0
    records = []
    for depth in args.depth:
        report = harness.verify_example1(depth, args.max_alg)
        records.append({
            "schema_version": harness.SCHEMA_VERSION,
            "depth": depth,
            "assertions": report.assertions,
            "mccoy": report.mccoy.holds,
            "mccoy_witness": harness.render(report.mccoy.witness) if report.mccoy.witness else None,
            "weak_content_witness": harness.render(report.weak_content_radical.witness),
        })
        if not args.json:
            print(f"N={depth}")
            for claim, ok in report.assertions.items():
                print(f"  {'ok  ' if ok else 'FAIL'} {claim}")
            print(f"  mccoy: {format_verdict(report.mccoy)}")
        if not report.passed:
            status = 1
    if args.json:
        for record in records:
            print(json.dumps(record))
    return status


def cmd_search(args) -> int:
    try:
        harness.compile_predicate(args.predicate)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = harness.search_counterexample(_corpus(args), args.predicate, args.nmax)
    match = result.match
    if args.json:
        print(json.dumps({
            "schema_version": harness.SCHEMA_VERSION,
            "predicate": args.predicate,
            "searched": result.searched,
            "match": harness.report_to_json(match, timings=False) if match else None,
            "critical": result.critical,
        }))
    elif match is None:
        print(f"absent ({result.searched} instances searched)")
    else:
        print(("CRITICAL " if result.critical else "") + f"match: {match.descriptor}")
    return 1 if result.critical else 0


COMMANDS = {
    "analyze": cmd_analyze,
    "content": cmd_content,
    "check": cmd_check,
    "verify-theorems": cmd_verify_theorems,
    "verify-example1": cmd_verify_example1,
    "search": cmd_search,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return COMMANDS[args.verb](args)
    except (ContentLabError, UsageError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
