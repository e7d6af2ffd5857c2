"""Translation of a chart spec plus a data profile into ground facts.

Encodings get positional identifiers e0, e1, ... that are regenerated on
every extraction, so facts are never reused across edits. A token whose
canonical form is missing produces a raw_* fact and suppresses the
canonical fact for that slot: one root cause, one diagnostic.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any, Iterable, Iterator

from .profiling import DatasetProfile
from .spec_model import ChartSpec, Encoding

# predicate name -> arity, the base vocabulary rule files are checked against
FACT_PREDICATES: dict[str, int] = {
    "mark": 1,
    "raw_mark": 1,
    "encoding": 1,
    "channel": 2,
    "raw_channel": 2,
    "field": 2,
    "unknown_field": 2,
    "type": 2,
    "raw_type": 2,
    "aggregate": 2,
    "raw_aggregate": 2,
    "bin": 2,
    "raw_bin": 2,
    "log": 1,
    "zero": 1,
    "no_zero": 1,
    "stack": 2,
    "raw_stack": 2,
    "fieldtype": 2,
    "cardinality": 2,
    "has_nonpositive": 1,
}

_SYMBOL = re.compile(r"^[a-z][a-z0-9_]*$")


@dataclass(frozen=True, order=True)
class Fact:
    predicate: str
    args: tuple[Any, ...]

    def __str__(self) -> str:
        rendered = ",".join(_render_arg(a) for a in self.args)
        return f"{self.predicate}({rendered})."


def _render_arg(arg: Any) -> str:
    if isinstance(arg, int) and not isinstance(arg, bool):
        return str(arg)
    text = arg if isinstance(arg, str) else json.dumps(arg)
    if _SYMBOL.match(text):
        return text
    return json.dumps(text)


class FactBase:
    """Ordered, duplicate-free collection of ground facts."""

    def __init__(self, facts: Iterable[Fact] = ()):
        self._facts: list[Fact] = []
        self._seen: set[Fact] = set()
        self._by_pred: dict[str, list[Fact]] = {}
        for f in facts:
            self.add(f)

    def add(self, fact: Fact) -> None:
        if fact in self._seen:
            return
        self._seen.add(fact)
        self._facts.append(fact)
        self._by_pred.setdefault(fact.predicate, []).append(fact)

    def by_predicate(self, predicate: str) -> list[Fact]:
        return self._by_pred.get(predicate, [])

    def __iter__(self) -> Iterator[Fact]:
        return iter(self._facts)

    def __len__(self) -> int:
        return len(self._facts)

    def __contains__(self, fact: Fact) -> bool:
        return fact in self._seen

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FactBase):
            return NotImplemented
        return self._seen == other._seen

    def to_text(self) -> str:
        """One fact per line, byte-compatible with the rule file syntax."""
        return "\n".join(str(f) for f in self._facts) + ("\n" if self._facts else "")


def fact(predicate: str, *args: Any) -> Fact:
    return Fact(predicate, args)


def _encoding_facts(eid: str, enc: Encoding, profile: DatasetProfile | None) -> Iterator[Fact]:
    yield fact("encoding", eid)
    if enc.channel.valid:
        yield fact("channel", eid, enc.channel.canonical)
    else:
        yield fact("raw_channel", eid, str(enc.channel.raw))

    if enc.field is not None:
        if profile is not None and profile.get(enc.field) is None:
            yield fact("unknown_field", eid, enc.field)
        else:
            yield fact("field", eid, enc.field)

    if enc.type is not None:
        if enc.type.valid:
            yield fact("type", eid, enc.type.canonical)
        else:
            yield fact("raw_type", eid, str(enc.type.raw))

    if enc.aggregate is not None:
        if enc.aggregate.valid:
            yield fact("aggregate", eid, enc.aggregate.canonical)
        else:
            yield fact("raw_aggregate", eid, str(enc.aggregate.raw))

    if enc.bin is not None:
        if enc.bin.valid:
            yield fact("bin", eid, enc.bin.maxbins if enc.bin.maxbins is not None else "default")
        else:
            bad = enc.bin.invalid_value()
            yield fact("raw_bin", eid, bad if isinstance(bad, int) and not isinstance(bad, bool) else json.dumps(bad))

    if enc.log:
        yield fact("log", eid)
    elif enc.zero is True:
        yield fact("zero", eid)
    elif enc.zero is False:
        yield fact("no_zero", eid)

    if enc.stack is not None:
        if enc.stack.canonical is None:
            yield fact("raw_stack", eid, str(enc.stack.raw))
        elif enc.stack.canonical != "none":
            yield fact("stack", eid, enc.stack.canonical)


def extract_facts(spec: ChartSpec, profile: DatasetProfile | None = None) -> FactBase:
    """Ground facts for a spec, with data facts injected from the profile.

    Passing no profile skips all data facts, which silences every
    data-dependent rule; spec-only rules still see their facts.
    """
    base = FactBase()
    if spec.mark.valid:
        base.add(fact("mark", spec.mark.canonical))
    else:
        base.add(fact("raw_mark", str(spec.mark.raw)))

    referenced: list[str] = []
    for i, enc in enumerate(spec.encodings):
        eid = f"e{i}"
        for f in _encoding_facts(eid, enc, profile):
            base.add(f)
        if enc.field is not None and enc.field not in referenced:
            referenced.append(enc.field)

    if profile is not None:
        for name in referenced:
            col = profile.get(name)
            if col is None:
                continue
            base.add(fact("fieldtype", name, col.type))
            base.add(fact("cardinality", name, col.cardinality))
            if col.has_nonpositive:
                base.add(fact("has_nonpositive", name))
    return base


def fact_count_bound(spec: ChartSpec) -> int:
    """Linear bound on the size of the extracted fact base."""
    fields = {enc.field for enc in spec.encodings if enc.field is not None}
    return 8 * len(spec.encodings) + 3 * len(fields) + 2
