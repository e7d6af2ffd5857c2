#!/usr/bin/env python3
"""Timing and fact-count report for the engine on the corpus.

Prints per-fixture lint / fix wall time over repeated runs plus the
extracted fact count against its structural bound.
"""

from __future__ import annotations

import json
import statistics
import time
from pathlib import Path

from vizlint import (
    extract_facts,
    fact_count_bound,
    fix,
    lint,
    load_default_catalog,
    parse_spec_dict,
    profile_dataset,
)

ROOT = Path(__file__).resolve().parent.parent
REPEATS = 5


def main() -> None:
    profiles = {
        "cars": profile_dataset(ROOT / "data" / "cars.json"),
        "seattle-weather": profile_dataset(ROOT / "data" / "seattle-weather.csv"),
        "airports": profile_dataset(ROOT / "data" / "airports.csv"),
    }
    catalog = load_default_catalog()

    print(f"{'fixture':38} {'facts':>5} {'bound':>5} {'lint ms':>8} {'fix ms':>8}")
    for path in sorted((ROOT / "tests" / "corpus").glob("*.json")):
        fixture = json.loads(path.read_text())
        spec = parse_spec_dict(fixture["spec"])
        profile = profiles[fixture["data"]] if fixture["data"] else None

        facts = extract_facts(spec, profile)
        bound = fact_count_bound(spec)

        lint_times, fix_times = [], []
        for _ in range(REPEATS):
            t0 = time.perf_counter()
            lint(extract_facts(spec, profile), catalog)
            lint_times.append(time.perf_counter() - t0)
            t0 = time.perf_counter()
            fix(spec, profile)
            fix_times.append(time.perf_counter() - t0)

        print(
            f"{path.stem:38} {len(facts):>5} {bound:>5}"
            f" {statistics.median(lint_times) * 1000:>8.1f}"
            f" {statistics.median(fix_times) * 1000:>8.1f}"
        )


if __name__ == "__main__":
    main()
