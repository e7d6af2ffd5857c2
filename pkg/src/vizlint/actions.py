"""The 24 edit operations the fixer can propose, and how they edit a spec.

An action is identified by (name, channel, value); two actions proposed
for different violations are the same action exactly when those three
match. Application is pure: it returns a new spec and never mutates.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any

from .spec_model import (
    AGGREGATES,
    CHANNELS,
    MARKS,
    STACKS,
    TYPES,
    BinSpec,
    ChartSpec,
    Encoding,
    Token,
    VizlintError,
)

TABLE1 = (
    "CHANGE_MARK",
    "ADD_CHANNEL",
    "CHANGE_CHANNEL",
    "REMOVE_CHANNEL",
    "ADD_FIELD",
    "CHANGE_FIELD",
    "REMOVE_FIELD",
    "CHANGE_TYPE",
    "BIN",
    "REMOVE_BIN",
    "AGGREGATE",
    "CHANGE_AGGREGATE",
    "REMOVE_AGGREGATE",
    "STACK",
    "REMOVE_STACK",
    "LOG",
    "REMOVE_LOG",
    "ZERO",
    "REMOVE_ZERO",
    "CORRECT_MARK",
    "CORRECT_CHANNEL",
    "CORRECT_TYPE",
    "CORRECT_AGGREGATE",
    "CORRECT_BIN",
)
_TABLE1_INDEX = {name: i for i, name in enumerate(TABLE1)}


class ActionError(VizlintError):
    pass


@dataclass(frozen=True, order=True)
class Action:
    name: str
    channel: str | None = None
    value: Any = None

    def __str__(self) -> str:
        parts = [p for p in (self.channel, None if self.value is None else str(self.value)) if p is not None]
        return f"{self.name}({', '.join(parts)})"

    def to_json(self) -> dict:
        return {"name": self.name, "channel": self.channel, "value": self.value}


def action_sort_key(action: Action) -> tuple:
    """Deterministic application order: target channel, then table order."""
    if action.channel is None:
        chan_rank = (-1, "")
    elif action.channel in CHANNELS:
        chan_rank = (CHANNELS.index(action.channel), "")
    else:
        chan_rank = (len(CHANNELS), action.channel)
    return (chan_rank, _TABLE1_INDEX.get(action.name, len(TABLE1)), str(action.value))


def _find_encoding(spec: ChartSpec, target: str) -> int:
    for i, enc in enumerate(spec.encodings):
        if str(enc.channel.raw) == target or enc.channel.canonical == target:
            return i
    raise ActionError(f"no such encoding: {target!r}")


def _with_encoding(spec: ChartSpec, index: int, enc: Encoding) -> ChartSpec:
    encodings = spec.encodings[:index] + (enc,) + spec.encodings[index + 1 :]
    return replace(spec, encodings=encodings)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ActionError(message)


def apply_action(spec: ChartSpec, action: Action) -> ChartSpec:
    """Apply one action, raising ActionError when its precondition fails."""
    name = action.name
    if name not in _TABLE1_INDEX:
        raise ActionError(f"unknown action {name!r}")

    if name in ("CHANGE_MARK", "CORRECT_MARK"):
        return replace(spec, mark=Token.of(action.value, MARKS))

    if name == "ADD_CHANNEL":
        _require(action.channel not in spec.occupied_channels(), "channel occupied")
        enc = Encoding(channel=Token.of(action.channel, CHANNELS), field=action.value)
        return replace(spec, encodings=spec.encodings + (enc,))

    idx = _find_encoding(spec, action.channel or "")
    enc = spec.encodings[idx]

    if name in ("CHANGE_CHANNEL", "CORRECT_CHANNEL"):
        # the target must be free or the spec could not serialize back
        # to one encoding entry per channel key
        others: set[str] = set()
        for i, other in enumerate(spec.encodings):
            if i == idx:
                continue
            others.add(str(other.channel.raw))
            if other.channel.canonical:
                others.add(other.channel.canonical)
        _require(action.value not in others, "channel occupied")
        return _with_encoding(spec, idx, replace(enc, channel=Token.of(action.value, CHANNELS)))
    if name == "REMOVE_CHANNEL":
        encodings = spec.encodings[:idx] + spec.encodings[idx + 1 :]
        return replace(spec, encodings=encodings)
    if name == "ADD_FIELD":
        _require(enc.field is None, f"channel {action.channel} already declares a field")
        return _with_encoding(spec, idx, replace(enc, field=str(action.value)))
    if name == "CHANGE_FIELD":
        _require(enc.field is not None, f"channel {action.channel} declares no field")
        return _with_encoding(spec, idx, replace(enc, field=str(action.value)))
    if name == "REMOVE_FIELD":
        _require(enc.field is not None, f"channel {action.channel} declares no field")
        return _with_encoding(spec, idx, replace(enc, field=None))
    if name in ("CHANGE_TYPE", "CORRECT_TYPE"):
        return _with_encoding(spec, idx, replace(enc, type=Token.of(action.value, TYPES)))
    if name == "BIN":
        _require(enc.bin is None, f"channel {action.channel} is already binned")
        return _with_encoding(spec, idx, replace(enc, bin=BinSpec(raw=True)))
    if name == "REMOVE_BIN":
        _require(enc.bin is not None, f"channel {action.channel} is not binned")
        return _with_encoding(spec, idx, replace(enc, bin=None))
    if name == "CORRECT_BIN":
        _require(enc.bin is not None, f"channel {action.channel} is not binned")
        mb = int(action.value)
        return _with_encoding(spec, idx, replace(enc, bin=BinSpec(raw={"maxbins": mb}, maxbins=mb)))
    if name == "AGGREGATE":
        _require(enc.aggregate is None, f"channel {action.channel} is already aggregated")
        return _with_encoding(spec, idx, replace(enc, aggregate=Token.of(action.value, AGGREGATES)))
    if name in ("CHANGE_AGGREGATE", "CORRECT_AGGREGATE"):
        _require(enc.aggregate is not None, f"channel {action.channel} is not aggregated")
        return _with_encoding(spec, idx, replace(enc, aggregate=Token.of(action.value, AGGREGATES)))
    if name == "REMOVE_AGGREGATE":
        _require(enc.aggregate is not None, f"channel {action.channel} is not aggregated")
        return _with_encoding(spec, idx, replace(enc, aggregate=None))
    if name == "STACK":
        _require(
            enc.stack is None or enc.stack.canonical is None,
            f"channel {action.channel} already declares a stack mode",
        )
        return _with_encoding(spec, idx, replace(enc, stack=Token.of(action.value, STACKS)))
    if name == "REMOVE_STACK":
        _require(enc.stack is not None, f"channel {action.channel} is not stacked")
        return _with_encoding(spec, idx, replace(enc, stack=None))
    if name == "LOG":
        _require(not enc.log, f"channel {action.channel} already uses a log scale")
        return _with_encoding(spec, idx, replace(enc, log=True))
    if name == "REMOVE_LOG":
        _require(enc.log, f"channel {action.channel} does not use a log scale")
        return _with_encoding(spec, idx, replace(enc, log=False))
    if name == "ZERO":
        _require(enc.zero is not True, f"channel {action.channel} already requires a zero baseline")
        return _with_encoding(spec, idx, replace(enc, zero=True))
    if name == "REMOVE_ZERO":
        _require(enc.zero is not None, f"channel {action.channel} declares no zero setting")
        return _with_encoding(spec, idx, replace(enc, zero=None))

    raise ActionError(f"unhandled action {name!r}")


def apply_actions(spec: ChartSpec, actions: list[Action]) -> ChartSpec:
    for action in actions:
        spec = apply_action(spec, action)
    return spec


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance with unit insert, delete, substitute costs."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (ca != cb),
            ))
        previous = current
    return previous[-1]


def nearest_token(raw: str, vocab: tuple[str, ...]) -> str:
    """Closest vocabulary entry by edit distance, ties broken alphabetically."""
    return min(sorted(vocab), key=lambda cand: edit_distance(raw, cand))
