#!/usr/bin/env python3
"""Run lint + fix over every corpus fixture and print what happened.

Usage:
    python scripts/run_corpus.py            # all fixtures
    python scripts/run_corpus.py 05 07      # only fixtures whose filename
                                            # starts with one of the prefixes
"""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path

from vizlint import extract_facts, fix, lint, load_default_catalog, parse_spec_dict, profile_dataset

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "tests" / "corpus"
DATA = ROOT / "data"

DATASETS = {
    "cars": DATA / "cars.json",
    "seattle-weather": DATA / "seattle-weather.csv",
    "airports": DATA / "airports.csv",
}


def main(argv: list[str]) -> int:
    prefixes = tuple(argv) or ("",)
    profiles = {name: profile_dataset(path) for name, path in DATASETS.items()}
    catalog = load_default_catalog()
    failures = 0

    for path in sorted(CORPUS.glob("*.json")):
        if not path.name.startswith(prefixes):
            continue
        fixture = json.loads(path.read_text())
        spec = parse_spec_dict(fixture["spec"])
        profile = profiles[fixture["data"]] if fixture["data"] else None

        started = time.perf_counter()
        violations = lint(extract_facts(spec, profile), catalog)
        plan = fix(spec, profile)
        elapsed = time.perf_counter() - started

        print(f"== {path.stem} ({fixture['name']}) [{elapsed * 1000:.0f} ms]")
        for v in violations:
            print(f"   lint  {v.key()}  {v.message}")
        for s in plan.selected:
            print(f"   fix   {s.action}  score={float(s.score):.4f}")
        print(f"   objective {float(plan.objective):.4f}")
        for entry in plan.diff:
            print(f"   diff  {entry.kind} {entry.path}: {entry.before!r} -> {entry.after!r}")
        if plan.residuals:
            failures += 1
            print(f"   RESIDUALS {[v.key() for v in plan.residuals]}")
        expected = fixture.get("plan")
        got = [str(s.action) for s in plan.selected]
        if expected is not None and got != expected:
            failures += 1
            print(f"   PLAN MISMATCH expected {expected}")
        print()

    if failures:
        print(f"{failures} fixture(s) off the recorded expectation")
        return 1
    print("all fixtures clean after repair")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
