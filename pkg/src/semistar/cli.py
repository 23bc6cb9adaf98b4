"""Command-line surface: eval, member, check, axioms, report.

Exit codes for `check`: 0 all assertions pass, 1 an assertion failed,
2 the scenario file is malformed.  The default seed comes from the
SEMISTAR_SEED environment variable; --seed overrides it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .domains import FractionalIdeal
from .expressions import ExpressionError, FnVal, parse_expression
from .function_rings import kr_member, na_member, in_multiplicative_set_N
from .operations import SemistarOp
from .scenario import (
    ScenarioError,
    _budget,
    _json_safe,
    build_context,
    emit_report,
    load_scenario,
    report_to_dict,
    run_scenario,
)


def _default_seed(args) -> int | None:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("SEMISTAR_SEED")
    return int(env) if env else None


def _context_from_args(args):
    if args.scenario:
        scenario = load_scenario(args.scenario)
    elif getattr(args, "domain", None):
        scenario = load_scenario({"name": "inline", "domain": json.loads(args.domain),
                                  "assertions": []})
    else:
        raise ScenarioError("need --scenario (or --domain for eval)")
    seed = _default_seed(args)
    return build_context(scenario, scenario.seed if seed is None else seed)


def cmd_check(args) -> int:
    try:
        report = run_scenario(args.scenario, seed=_default_seed(args))
    except ScenarioError as exc:
        print(f"scenario error: {exc}", file=sys.stderr)
        return 2
    text = emit_report(report, args.format)
    if args.out:
        Path(args.out).write_text(
            emit_report(report, "json") if args.out.endswith(".json") else text
        )
    print(text)
    return report.exit_code()


def cmd_eval(args) -> int:
    try:
        rc = _context_from_args(args)
        value = parse_expression(args.expr, rc.ctx)
        if isinstance(value, FnVal):
            if value.uses_fn_variable():
                print(value.to_fn_elem().render())
            else:
                print(rc.domain.elem_render(value.to_element()))
        elif isinstance(value, FractionalIdeal):
            if args.apply:
                star = rc.operations.get(args.apply)
                if star is None:
                    from .expressions import parse_operation

                    star = parse_operation(args.apply, rc.ctx)
                oracle = star.apply(value).oracle
                if oracle.all_K:
                    print("all of K")
                elif oracle.presentation is not None:
                    print(oracle.presentation.normalize().render())
                else:
                    print(f"<membership oracle {oracle.tag}, grade {oracle.grade}>")
            else:
                print(value.normalize().render())
        elif isinstance(value, SemistarOp):
            print(f"operation {value.name} (flags: finite_type={value.flags.finite_type}, "
                  f"stable={value.flags.stable_claimed}, eab={value.flags.eab_claimed})")
        else:
            print(value)
        return 0
    except (ScenarioError, ExpressionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def cmd_member(args) -> int:
    try:
        rc = _context_from_args(args)
        from .expressions import parse_element, parse_fn_element, parse_ideal, parse_operation

        if args.ring in ("na", "kr", "N"):
            star = rc.operations.get(args.op) or parse_operation(args.op, rc.ctx)
            elem = parse_fn_element(args.element, rc.ctx)
            if args.ring == "na":
                cert = na_member(star, elem)
            elif args.ring == "kr":
                cert = kr_member(star, elem, _budget(rc, args.budget))
            else:
                verdict = in_multiplicative_set_N(star, elem.num)
                print(json.dumps({"verdict": "yes" if verdict else "no"}))
                return 0
            print(json.dumps(_json_safe(cert), sort_keys=True))
            return 0
        if args.ring == "ideal":
            E = parse_ideal(args.ideal, rc.ctx)
            z = parse_element(args.element, rc.ctx)
            print(json.dumps({"verdict": "yes" if E.contains_elem(z) else "no"}))
            return 0
        print(f"unknown ring {args.ring!r}", file=sys.stderr)
        return 2
    except (ScenarioError, ExpressionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def cmd_axioms(args) -> int:
    try:
        rc = _context_from_args(args)
        from .expressions import parse_operation
        from .operations import check_axioms

        star = rc.operations.get(args.op) or parse_operation(args.op, rc.ctx)
        plan = rc.sampler.axiom_plan(n_ideals=args.samples)
        report = check_axioms(star, plan)
        print(json.dumps(_json_safe(report), indent=2, sort_keys=True))
        return 0 if report["pass"] else 1
    except (ScenarioError, ExpressionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def cmd_report(args) -> int:
    try:
        data = json.loads(Path(args.infile).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
        return 0
    lines = [f"scenario {data.get('scenario')} (seed {data.get('seed')})"]
    for r in data.get("assertions", []):
        mark = {"pass": "PASS", "fail": "FAIL", "error": "ERR "}.get(r.get("verdict"), "??? ")
        lines.append(f"  [{mark}] {r.get('id', ''):<14} {r.get('kind', ''):<20}"
                     f" {r.get('millis', 0):>5} ms")
    s = data.get("summary", {})
    lines.append(f"  {s.get('passed', '?')}/{s.get('total', '?')} passed")
    print("\n".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semistar",
        description="Exact workbench for semistar operations and their function rings.",
    )
    parser.add_argument("--version", action="version", version=f"semistar {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run a scenario file and report per-assertion verdicts")
    p.add_argument("scenario")
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out", help="also write the report to this path (json when *.json)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("eval", help="evaluate one expression against a scenario context")
    p.add_argument("expr")
    p.add_argument("--scenario")
    p.add_argument("--domain", help="inline domain JSON instead of a scenario file")
    p.add_argument("--apply", help="operation to apply when the expression is an ideal")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("member", help="membership of an element in a ring or ideal")
    p.add_argument("--scenario", required=True)
    p.add_argument("--ring", required=True, choices=["na", "kr", "N", "ideal"])
    p.add_argument("--op", help="operation name for na/kr/N")
    p.add_argument("--ideal", help="ideal expression for --ring ideal")
    p.add_argument("--element", required=True)
    p.add_argument("--budget", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("axioms", help="run the axiom property suite for one operation")
    p.add_argument("--scenario", required=True)
    p.add_argument("--op", required=True)
    p.add_argument("--samples", type=int, default=8)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("report", help="re-render a JSON report")
    p.add_argument("infile")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
