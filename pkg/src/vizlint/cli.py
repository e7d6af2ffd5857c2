"""Command line front end: `vizlint lint` and `vizlint fix`.

Exit codes: 0 clean (or fully fixed), 1 violations remain, 2 input
error. Reports go to standard output; error messages to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .facts import extract_facts
from .fixer import FixPlan, fix, load_config
from .profiling import DatasetProfile, profile_dataset
from .rules import RuleCatalog, lint, load_default_catalog, parse_rules
from .spec_model import ChartSpec, VizlintError, parse_spec, serialize_spec


def _load_spec(path: str) -> ChartSpec:
    return parse_spec(Path(path).read_text())


def _load_profile(spec: ChartSpec, data_path: str | None) -> DatasetProfile | None:
    if data_path is not None:
        return profile_dataset(data_path)
    if spec.data is not None and spec.data.values:
        return profile_dataset([dict(r) for r in spec.data.values])
    return None


def _load_catalog(rules_path: str | None) -> RuleCatalog:
    if rules_path is None:
        return load_default_catalog()
    return parse_rules(Path(rules_path).read_text())


def _violation_lines(violations) -> list[str]:
    return [f"{v.key()}  [{v.category}]  {v.message}" for v in violations]


def _cmd_lint(args: argparse.Namespace) -> int:
    spec = _load_spec(args.spec)
    profile = _load_profile(spec, args.data)
    catalog = _load_catalog(args.rules)
    violations = lint(extract_facts(spec, profile), catalog)
    if args.format == "json":
        print(json.dumps([v.to_json() for v in violations], indent=2))
    else:
        if violations:
            print(f"{len(violations)} violation(s):")
            for line in _violation_lines(violations):
                print(f"  {line}")
        else:
            print("no violations")
    return 1 if violations else 0


def _print_plan(plan: FixPlan) -> None:
    if not plan.selected and not plan.residuals:
        print("no violations, nothing to fix")
        return
    print("plan:")
    for scored in plan.selected:
        print(f"  {scored.action}  (score {float(scored.score):.4f})")
    if plan.skipped:
        for action in plan.skipped:
            print(f"  {action}  (skipped, superseded by an earlier edit)")
    print(f"objective: {float(plan.objective):.4f}")
    if plan.diff:
        print("diff:")
        for entry in plan.diff:
            print(f"  {entry.kind} {entry.path}: {entry.before!r} -> {entry.after!r}")
    if plan.unfixable:
        print("unfixable:")
        for v in plan.unfixable:
            print(f"  {v.key()}  {v.message}")
    if plan.residuals:
        print("residual violations:")
        for line in _violation_lines(plan.residuals):
            print(f"  {line}")
    else:
        print("revised spec is clean")


def _cmd_fix(args: argparse.Namespace) -> int:
    spec = _load_spec(args.spec)
    profile = _load_profile(spec, args.data)
    catalog = _load_catalog(args.rules)
    config = None
    if args.config is not None:
        config = load_config(json.loads(Path(args.config).read_text()))
    plan = fix(spec, profile, catalog, config)
    if args.format == "json":
        print(json.dumps(plan.to_json(), indent=2))
    else:
        _print_plan(plan)
    if args.apply:
        text = serialize_spec(plan.revised_spec)
        if args.out is not None:
            Path(args.out).write_text(text + "\n")
        elif args.format != "json":
            print(text)
    return 1 if plan.residuals else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vizlint", description="Lint and repair chart specifications."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_lint = sub.add_parser("lint", help="report rule violations in a spec")
    p_lint.add_argument("spec", help="path to a chart spec JSON file")
    p_lint.add_argument("--data", help="path to a CSV or JSON dataset")
    p_lint.add_argument("--rules", help="path to an alternative rule file")
    p_lint.add_argument("--format", choices=("text", "json"), default="text")
    p_lint.set_defaults(func=_cmd_lint)

    p_fix = sub.add_parser("fix", help="plan and apply the optimal repair")
    p_fix.add_argument("spec", help="path to a chart spec JSON file")
    p_fix.add_argument("--data", help="path to a CSV or JSON dataset")
    p_fix.add_argument("--rules", help="path to an alternative rule file")
    p_fix.add_argument("--apply", action="store_true", help="emit the revised spec")
    p_fix.add_argument("--out", help="write the revised spec to this file")
    p_fix.add_argument("--config", help="path to a JSON weights/costs override file")
    p_fix.add_argument("--format", choices=("text", "json"), default="text")
    p_fix.set_defaults(func=_cmd_fix)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (VizlintError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
