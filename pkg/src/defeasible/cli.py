"""Command-line front end.

Subcommands:

* ``infer FILE --logic L``: print the extension, one sorted conclusion line
  per tagged conclusion (``+partial mammal``).
* ``transform FILE DIRECTION``: rewrite a theory (``ntd2td``, ``td2ntd``,
  ``conclusions``, ``behavior``), write canonical ``.dl`` output plus a
  tab-separated mapping sidecar, and print the size ratio.
* ``simcheck FILE1 LOGIC1 FILE2 LOGIC2 --additions ...``: check simulation;
  exit 0 when equivalent, 1 with a counterexample block when not.
* ``fixtures list`` / ``fixtures run [NAME]``: the built-in worked examples.

Exit codes: 0 success (simcheck: equivalent), 1 simcheck counterexample or
failed fixture expectations, 2 usage or input errors.  Output is
byte-deterministic given identical inputs, flags, and seed; the seed
(``--seed`` or the ``DL_SEED`` environment variable) is echoed in report
headers whenever sampling may occur.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional

from .engine import extension
from .fixtures import fixture_names, load_fixtures, run_fixture
from .model import LOGICS, TheoryError, language_of, theory_size, validate
from .simulation import AdditionClass, SimulationError, check_simulation
from .theoryfile import ParseError, parse, parse_literal, render
from .transforms import (
    TransformError,
    TransformReport,
    conclusions_to_theory,
    fact_behavior_theory,
    ntd_to_td,
    td_to_ntd,
)

USAGE_ERROR = 2


class _CliError(Exception):
    pass


def _logic(name: str):
    try:
        return LOGICS[name]
    except KeyError:
        raise _CliError(
            f"unknown logic {name!r}; choose from {', '.join(sorted(LOGICS))}"
        )


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc}")
    try:
        return parse(text)
    except ParseError as exc:
        raise _CliError(f"{path}: {exc}")


def _default_seed() -> int:
    raw = os.environ.get("DL_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise _CliError(f"DL_SEED must be an integer, got {raw!r}")


def cmd_infer(args) -> int:
    theory = _load(args.theory)
    logic = _logic(args.logic)
    ext = extension(theory, logic, trace=args.trace)
    for line in ext.lines():
        print(line)
    if args.trace:
        for entry in ext.trace:
            print(f"# {entry}")
    return 0


_DIRECTIONS = ("ntd2td", "td2ntd", "conclusions", "behavior")


def cmd_transform(args) -> int:
    theory = _load(args.theory)
    direction = args.direction
    if direction == "ntd2td":
        report = ntd_to_td(theory)
    elif direction == "td2ntd":
        report = td_to_ntd(theory)
    elif direction == "conclusions":
        logic = _logic(args.logic)
        out = conclusions_to_theory(extension(theory, logic), language_of(theory))
        report = TransformReport(out, theory_size(theory), theory_size(out), ())
    elif direction == "behavior":
        logic = _logic(args.logic)
        out = fact_behavior_theory(theory, logic, atom_cap=args.atom_cap)
        report = TransformReport(out, theory_size(theory), theory_size(out), ())
    else:  # pragma: no cover - argparse restricts choices
        raise _CliError(f"unknown direction {direction!r}")

    out_path = Path(args.output) if args.output else Path(args.theory).with_suffix(
        f".{direction}.dl"
    )
    out_path.write_text(render(report.theory), encoding="utf-8")
    map_path = out_path.with_suffix(out_path.suffix + ".map.tsv")
    map_path.write_text(report.sidecar_text(), encoding="utf-8")
    ratio = report.output_size / report.input_size if report.input_size else float(
        report.output_size
    )
    print(f"wrote {out_path} ({len(report.theory.rules)} rules) and {map_path}")
    print(f"size: {report.input_size} -> {report.output_size} (ratio {ratio:.2f})")
    return 0


def _addition_class(args, d1) -> AdditionClass:
    spec = args.additions
    if spec == "empty":
        return AdditionClass.empty()
    if spec == "facts":
        if args.base:
            base = [parse_literal(part) for part in args.base.split(",")]
        else:
            base = sorted(language_of(d1), key=str)
        return AdditionClass.facts(base, limit=args.limit, seed=args.seed)
    if spec.startswith("fixture:"):
        name = spec.split(":", 1)[1]
        fixtures = load_fixtures()
        if name not in fixtures:
            raise _CliError(f"unknown fixture {name!r}")
        addition = fixtures[name].addition
        if addition is None:
            raise _CliError(f"fixture {name!r} has no addition")
        return AdditionClass.fixed("rules", [addition], f"addition of fixture {name}")
    raise _CliError(
        f"bad --additions {spec!r}: expected 'empty', 'facts', or 'fixture:<name>'"
    )


def cmd_simcheck(args) -> int:
    d1 = _load(args.theory1)
    d2 = _load(args.theory2)
    logic1 = _logic(args.logic1)
    logic2 = _logic(args.logic2)
    additions = _addition_class(args, d1)
    print(f"# simcheck: {args.theory1} [{logic1}] vs {args.theory2} [{logic2}]")
    print(f"# additions: {additions.description}")
    print(f"# seed: {args.seed}")
    verdict = check_simulation(
        d1, logic1, d2, logic2, additions,
        restrict_to_base_language=args.restrict_to_base,
    )
    coverage = "exhaustive" if verdict.exhaustive else "sampled"
    print(f"# checked: {verdict.additions_checked} additions ({coverage})")
    if verdict.equivalent:
        print("verdict: equivalent")
        return 0
    ce = verdict.counterexample
    print("verdict: not-equivalent")
    print(f"witness literal: {ce.literal}")
    print(f"witness conclusion: {ce.conclusion} (concluded by {ce.side} side only)")
    print("addition:")
    body = render(ce.addition)
    print("\n".join("  " + line for line in body.splitlines()) if body else "  # empty")
    return 1


def cmd_fixtures(args) -> int:
    if args.action == "list":
        for name in fixture_names():
            print(name)
        return 0
    fixtures = load_fixtures()
    names = [args.name] if args.name else list(fixture_names())
    for name in names:
        if name not in fixtures:
            raise _CliError(f"unknown fixture {name!r}")
    failures = 0
    for name in names:
        for want, held in run_fixture(fixtures[name]):
            status = "pass" if held else "FAIL"
            print(f"{status} {name}: {want}")
            failures += 0 if held else 1
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="defeasible",
        description="Inference, transformation, and simulation checking for defeasible theories.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("infer", help="print the extension of a theory")
    p.add_argument("theory", help="a .dl theory file")
    p.add_argument("--logic", required=True, choices=sorted(LOGICS))
    p.add_argument("--trace", action="store_true", help="append inference trace lines")
    p.set_defaults(fn=cmd_infer)

    p = sub.add_parser("transform", help="rewrite a theory")
    p.add_argument("theory")
    p.add_argument("direction", choices=_DIRECTIONS)
    p.add_argument("-o", "--output", help="output path (default: <input>.<direction>.dl)")
    p.add_argument("--logic", default="partial", choices=sorted(LOGICS),
                   help="logic for the conclusions/behavior directions")
    p.add_argument("--atom-cap", type=int, default=8,
                   help="atom cap for the exponential behavior construction")
    p.set_defaults(fn=cmd_transform)

    p = sub.add_parser("simcheck", help="check simulation between two theories")
    p.add_argument("theory1")
    p.add_argument("logic1", choices=sorted(LOGICS))
    p.add_argument("theory2")
    p.add_argument("logic2", choices=sorted(LOGICS))
    p.add_argument("--additions", default="facts",
                   help="'empty', 'facts', or 'fixture:<name>' (default: facts)")
    p.add_argument("--base", help="comma-separated literals for the facts base "
                   "(default: the whole base-theory language)")
    p.add_argument("--limit", type=int, default=2 ** 16,
                   help="max additions before sampling kicks in")
    p.add_argument("--seed", type=int, default=None,
                   help="sampling seed (default: DL_SEED or 0)")
    p.add_argument("--restrict-to-base", action="store_true",
                   help="compare over the base theory's language only")
    p.set_defaults(fn=cmd_simcheck)

    p = sub.add_parser("fixtures", help="list or run the built-in fixtures")
    p.add_argument("action", choices=("list", "run"))
    p.add_argument("name", nargs="?", help="fixture name (run only; default: all)")
    p.set_defaults(fn=cmd_fixtures)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", None) is None and hasattr(args, "seed"):
        try:
            args.seed = _default_seed()
        except _CliError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return USAGE_ERROR
    try:
        return args.fn(args)
    except (_CliError, TheoryError, TransformError, SimulationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
