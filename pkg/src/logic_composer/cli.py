"""Command-line entry point.

Exit codes: 0 success/true, 1 semantically false (not a tautology,
unsatisfiable, expectation not met), 2 usage or parse error, 3 sampler or
solver budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import __version__, catalog, composer, report
from .formula import And, AtomLimitError, find_falsifying, find_satisfying, truth_table
from .sampling import SamplerConfig, SamplingError
from .text import ParseError, parse

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    pass


def _parse(text: str):
    try:
        return parse(text)
    except ParseError as exc:
        raise UsageError(f"parse error: {exc.message} (offset {exc.span.start})\n{exc.caret(text)}") from None


def _row(assignment: dict) -> str:
    return " ".join(f"{k}={'T' if v else 'F'}" for k, v in assignment.items())


def cmd_check(args) -> int:
    f = _parse(args.formula)
    if args.mode == "table":
        table = truth_table(f)
        print(" ".join(table.atoms) + " | value")
        for values, value in table.rows:
            print(" ".join("T" if v else "F" for v in values) + f" | {'T' if value else 'F'}")
        print(table.classification)
        return EXIT_OK if table.satisfying is not None else EXIT_FALSE
    if args.mode == "sat":
        witness = find_satisfying(f)
        if witness is None:
            print("unsatisfiable")
            return EXIT_FALSE
        print(f"satisfiable; satisfying row: {_row(witness)}")
        return EXIT_OK
    witness = find_falsifying(f)
    if witness is None:
        print("tautology")
        return EXIT_OK
    print(f"not a tautology; falsifying row: {_row(witness)}")
    return EXIT_FALSE


def _verdict_lines(verdict: composer.RelationVerdict) -> list:
    lines = [f"  verdict: {verdict.classification}"]
    if verdict.forward_witness:
        lines.append(f"  source -/-> result at {_row(verdict.forward_witness)}")
    if verdict.backward_witness:
        lines.append(f"  result -/-> source at {_row(verdict.backward_witness)}")
    return lines


def _structure(text: str) -> composer.ImplicationStructure:
    return composer.structure(_parse(text))


def cmd_compose(args) -> int:
    g1, g2 = _structure(args.first), _structure(args.second)
    result = composer.compose(g1, g2, allow_empty_context=args.allow_empty_context)
    print(result)
    verdict = composer.classify(And((g1.formula, g2.formula)), result.formula)
    print("\n".join(_verdict_lines(verdict)))
    return EXIT_OK


def cmd_invert(args) -> int:
    src = _structure(args.formula)
    for cand in composer.invert_all(src):
        print(cand)
        print("\n".join(_verdict_lines(composer.classify(src, cand.structure))))
    return EXIT_OK


def cmd_homogenize(args) -> int:
    src = _structure(args.formula)
    result = composer.homogenize(src)
    print(result)
    print("\n".join(_verdict_lines(composer.classify(src, result))))
    return EXIT_OK


def cmd_conditionalize(args) -> int:
    src = _structure(args.formula)
    result = composer.conditionalize(src, args.keep)
    print(result)
    print("\n".join(_verdict_lines(composer.classify(src, result))))
    return EXIT_OK


def cmd_derive(args) -> int:
    ds = catalog.derive_set(args.group)
    if args.json:
        print(json.dumps(ds.to_dict(), indent=2))
        return EXIT_OK
    for e in ds.entries():
        print(f"{e.kind:<14} {e.tag:<13} {e.text}")
    return EXIT_OK


def cmd_catalog(args) -> int:
    print(json.dumps(catalog.catalog_document(), indent=2))
    return EXIT_OK


def cmd_verify(args) -> int:
    target = args.target
    if target != "capstone" and target not in catalog.geo.GROUPS:
        raise UsageError(f"unknown group {target!r}; expected I, II, III, IV or capstone")
    try:
        cfg = SamplerConfig(seed=args.seed, sample_count=args.samples, tol_verify=args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    start = time.perf_counter()
    try:
        reports = catalog.verify(target, cfg)
    except SamplingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    doc = report.build_document("verify", target, cfg, reports, time.perf_counter() - start)
    if args.report:
        Path(args.report).write_text(report.dumps(doc))
    sys.stdout.write(report.dumps(doc) if args.json else report.render_text(doc))
    return EXIT_OK if doc["all_expectations_met"] else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="logic-composer", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide a formula by truth table")
    p.add_argument("formula")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--taut", dest="mode", action="store_const", const="taut")
    mode.add_argument("--sat", dest="mode", action="store_const", const="sat")
    mode.add_argument("--table", dest="mode", action="store_const", const="table")
    p.set_defaults(mode="taut", func=cmd_check)

    p = sub.add_parser("compose", help="compose two generating implications")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--allow-empty-context", action="store_true")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("invert", help="list inverse candidates of an implication")
    p.add_argument("formula")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("homogenize", help="rewrite a p | q conclusion as p ^ ~p & q")
    p.add_argument("formula")
    p.set_defaults(func=cmd_homogenize)

    p = sub.add_parser("conditionalize", help="move one disjunct of the conclusion into the premise")
    p.add_argument("formula")
    p.add_argument("--keep", required=True, help="disjunct to keep as the conclusion")
    p.set_defaults(func=cmd_conditionalize)

    p = sub.add_parser("derive", help="derived problem set of a group")
    p.add_argument("group")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("catalog", help="export the problem catalog as JSON")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", help="Monte-Carlo battery for a group or the capstone")
    p.add_argument("target", help="I, II, III, IV or capstone")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol", type=float, default=1e-9, help="verification tolerance")
    p.add_argument("--report", help="write the JSON report document to this path")
    p.add_argument("--json", action="store_true", help="print the JSON document instead of text")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
    except (composer.CompositionError, catalog.UnknownGroupError, AtomLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
