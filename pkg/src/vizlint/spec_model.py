"""Typed model of a single-view Vega-Lite specification.

The model covers the subset the linter reasons about (mark, encoding
channels, field/type/aggregate/bin/scale/stack) and carries everything
else through untouched, so edits never destroy unrelated content.
Unrecognized enum strings are kept as tokens with no canonical value
rather than rejected: a typo is something to lint, not a parse failure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field, replace
from typing import Any

MARKS = ("point", "bar", "line", "area", "tick", "text", "rect")
CHANNELS = ("x", "y", "color", "size", "shape", "text", "row", "column", "detail")
TYPES = ("quantitative", "ordinal", "nominal", "temporal")
AGGREGATES = ("count", "mean", "median", "min", "max", "sum", "stdev")
STACKS = ("zero", "normalize", "center", "none")


class VizlintError(Exception):
    """Base class for all errors raised by this package."""


class SpecParseError(VizlintError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class SpecStructureError(VizlintError):
    pass


@dataclass(frozen=True)
class Token:
    """A user-supplied enum value: the raw text plus its canonical form.

    canonical is None when the raw value is not in the vocabulary, which
    is how typos survive parsing and reach the rule engine.
    """

    raw: Any
    canonical: str | None

    @staticmethod
    def of(raw: Any, vocab: tuple[str, ...]) -> "Token":
        canonical = raw if isinstance(raw, str) and raw in vocab else None
        return Token(raw=raw, canonical=canonical)

    @property
    def valid(self) -> bool:
        return self.canonical is not None


def _stack_token(raw: Any) -> Token:
    # null and false both mean "no stacking" in Vega-Lite.
    if raw is None or raw is False:
        return Token(raw=raw, canonical="none")
    return Token.of(raw, STACKS)


@dataclass(frozen=True)
class BinSpec:
    """Binning request: true, {"maxbins": n}, or an invalid value kept raw."""

    raw: Any
    maxbins: int | None = None

    @staticmethod
    def of(raw: Any) -> "BinSpec | None":
        if raw is False or raw is None:
            return None
        if raw is True:
            return BinSpec(raw=True)
        if isinstance(raw, dict):
            mb = raw.get("maxbins")
            if isinstance(mb, int) and not isinstance(mb, bool) and mb > 0:
                return BinSpec(raw=raw, maxbins=mb)
            return BinSpec(raw=raw)
        return BinSpec(raw=raw)

    @property
    def valid(self) -> bool:
        if self.raw is True:
            return True
        return self.maxbins is not None

    def invalid_value(self) -> Any:
        """The offending payload for diagnostics, e.g. a bad maxbins."""
        if isinstance(self.raw, dict) and "maxbins" in self.raw:
            return self.raw["maxbins"]
        return self.raw


_Extras = tuple[tuple[str, Any], ...]


@dataclass(frozen=True, eq=True)
class Encoding:
    channel: Token
    field: str | None = None
    type: Token | None = None
    aggregate: Token | None = None
    bin: BinSpec | None = None
    log: bool = False
    zero: bool | None = None
    stack: Token | None = None
    scale_extra: _Extras = ()
    extra: _Extras = ()

    def channel_key(self) -> str:
        # the JSON object key this encoding came from (or will serialize to)
        return str(self.channel.raw)


@dataclass(frozen=True, eq=True)
class DataRef:
    values: tuple[Any, ...] | None = None
    url: str | None = None
    extra: _Extras = ()


@dataclass(frozen=True, eq=True)
class ChartSpec:
    mark: Token
    encodings: tuple[Encoding, ...] = ()
    data: DataRef | None = None
    mark_extra: _Extras = ()
    extra: _Extras = ()

    def encoding_for(self, channel: str) -> Encoding | None:
        """First encoding whose raw or canonical channel matches."""
        for enc in self.encodings:
            if str(enc.channel.raw) == channel or enc.channel.canonical == channel:
                return enc
        return None

    def occupied_channels(self) -> set[str]:
        out: set[str] = set()
        for enc in self.encodings:
            out.add(str(enc.channel.raw))
            if enc.channel.canonical:
                out.add(enc.channel.canonical)
        return out


def _items(obj: dict, skip: tuple[str, ...]) -> _Extras:
    return tuple((k, v) for k, v in obj.items() if k not in skip)


def _parse_encoding(channel_key: str, body: Any) -> Encoding:
    if not isinstance(body, dict):
        raise SpecStructureError(
            f"encoding channel {channel_key!r} must map to an object, got {type(body).__name__}"
        )
    channel = Token.of(channel_key, CHANNELS)

    field = body.get("field")
    if field is not None and not isinstance(field, str):
        field = str(field)

    type_tok = Token.of(body["type"], TYPES) if "type" in body else None
    agg_tok = Token.of(body["aggregate"], AGGREGATES) if "aggregate" in body else None
    bin_spec = BinSpec.of(body["bin"]) if "bin" in body else None
    stack_tok = _stack_token(body["stack"]) if "stack" in body else None

    log = False
    zero: bool | None = None
    scale_extra: _Extras = ()
    if "scale" in body:
        scale = body["scale"]
        if not isinstance(scale, dict):
            raise SpecStructureError(
                f"scale of channel {channel_key!r} must be an object"
            )
        log = scale.get("type") == "log"
        if "zero" in scale:
            zero = bool(scale["zero"])
        skip = ("zero", "type") if log else ("zero",)
        scale_extra = _items(scale, skip)

    extra = _items(body, ("field", "type", "aggregate", "bin", "stack", "scale"))
    return Encoding(
        channel=channel,
        field=field,
        type=type_tok,
        aggregate=agg_tok,
        bin=bin_spec,
        log=log,
        zero=zero,
        stack=stack_tok,
        scale_extra=scale_extra,
        extra=extra,
    )


def _parse_data(obj: Any) -> DataRef:
    if not isinstance(obj, dict):
        raise SpecStructureError("data must be an object")
    values = obj.get("values")
    if values is not None and not isinstance(values, list):
        raise SpecStructureError("data.values must be an array of rows")
    return DataRef(
        values=tuple(values) if values is not None else None,
        url=obj.get("url"),
        extra=_items(obj, ("values", "url")),
    )


def parse_spec_dict(obj: Any) -> ChartSpec:
    """Build a ChartSpec from an already-decoded JSON object."""
    if not isinstance(obj, dict):
        raise SpecStructureError("specification must be a JSON object")
    if "mark" not in obj:
        raise SpecStructureError("specification has no mark")
    if "encoding" not in obj:
        raise SpecStructureError("specification has no encoding object")

    raw_mark = obj["mark"]
    mark_extra: _Extras = ()
    if isinstance(raw_mark, dict):
        if "type" not in raw_mark:
            raise SpecStructureError("mark object has no type")
        mark = Token.of(raw_mark["type"], MARKS)
        mark_extra = _items(raw_mark, ("type",))
    elif isinstance(raw_mark, str):
        mark = Token.of(raw_mark, MARKS)
    else:
        raise SpecStructureError("mark must be a string or an object with a type")

    encoding_obj = obj["encoding"]
    if not isinstance(encoding_obj, dict):
        raise SpecStructureError("encoding must be an object keyed by channel")
    encodings = tuple(_parse_encoding(k, v) for k, v in encoding_obj.items())

    data = _parse_data(obj["data"]) if "data" in obj else None
    extra = _items(obj, ("mark", "encoding", "data"))
    return ChartSpec(mark=mark, encodings=encodings, data=data, mark_extra=mark_extra, extra=extra)


def parse_spec(text: str) -> ChartSpec:
    """Parse JSON text into a ChartSpec.

    Malformed JSON raises SpecParseError with the line and column of the
    failure; structural problems (missing mark or encoding) raise
    SpecStructureError.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"malformed JSON: {exc.msg}", exc.lineno, exc.colno) from exc
    return parse_spec_dict(obj)


def _encoding_to_dict(enc: Encoding) -> dict:
    out: dict[str, Any] = {}
    if enc.field is not None:
        out["field"] = enc.field
    if enc.type is not None:
        out["type"] = enc.type.raw
    if enc.aggregate is not None:
        out["aggregate"] = enc.aggregate.raw
    if enc.bin is not None:
        out["bin"] = enc.bin.raw
    scale: dict[str, Any] = {}
    if enc.log:
        scale["type"] = "log"
    if enc.zero is not None:
        scale["zero"] = enc.zero
    scale.update(dict(enc.scale_extra))
    if scale:
        out["scale"] = scale
    if enc.stack is not None:
        out["stack"] = enc.stack.raw
    out.update(dict(enc.extra))
    return out


def spec_to_dict(spec: ChartSpec) -> dict:
    out: dict[str, Any] = {}
    if spec.mark_extra:
        out["mark"] = {"type": spec.mark.raw, **dict(spec.mark_extra)}
    else:
        out["mark"] = spec.mark.raw
    out["encoding"] = {enc.channel_key(): _encoding_to_dict(enc) for enc in spec.encodings}
    if spec.data is not None:
        data: dict[str, Any] = {}
        if spec.data.values is not None:
            data["values"] = list(spec.data.values)
        if spec.data.url is not None:
            data["url"] = spec.data.url
        data.update(dict(spec.data.extra))
        out["data"] = data
    out.update(dict(spec.extra))
    return out


def serialize_spec(spec: ChartSpec) -> str:
    """Deterministic JSON text: mark, encoding, data, then passthrough keys."""
    return json.dumps(spec_to_dict(spec), indent=2, ensure_ascii=False)


# --- structural diff -------------------------------------------------------

DiffKind = str  # "added" | "removed" | "changed"


@dataclass(frozen=True)
class DiffEntry:
    path: str
    kind: DiffKind
    before: Any
    after: Any


def _diff_value(path: str, before: Any, after: Any, out: list[DiffEntry]) -> None:
    if before == after:
        return
    if before is None:
        out.append(DiffEntry(path, "added", None, after))
    elif after is None:
        out.append(DiffEntry(path, "removed", before, None))
    elif isinstance(before, dict) and isinstance(after, dict):
        for key in list(before) + [k for k in after if k not in before]:
            _diff_value(f"{path}/{key}", before.get(key), after.get(key), out)
    else:
        out.append(DiffEntry(path, "changed", before, after))


def diff_specs(before: ChartSpec, after: ChartSpec) -> tuple[DiffEntry, ...]:
    """Structural diff between two specs.

    Encodings are first matched by channel key; leftovers are paired by
    field so a channel rename shows up as one "changed" entry on the old
    channel's path instead of a remove plus an add.
    """
    out: list[DiffEntry] = []
    bd = spec_to_dict(before)
    ad = spec_to_dict(after)

    _diff_value("/mark", bd["mark"], ad["mark"], out)

    b_enc: dict[str, dict] = bd["encoding"]
    a_enc: dict[str, dict] = ad["encoding"]
    matched_after: set[str] = set()
    renames: list[tuple[str, str]] = []
    only_before = [k for k in b_enc if k not in a_enc]
    only_after = [k for k in a_enc if k not in b_enc]
    for bk in list(only_before):
        for ak in only_after:
            if ak in matched_after:
                continue
            if b_enc[bk].get("field") is not None and b_enc[bk].get("field") == a_enc[ak].get("field"):
                renames.append((bk, ak))
                matched_after.add(ak)
                only_before.remove(bk)
                break

    for key in b_enc:
        if key in a_enc:
            _diff_value(f"/encoding/{key}", b_enc[key], a_enc[key], out)
    for bk, ak in renames:
        out.append(DiffEntry(f"/encoding/{bk}", "changed", bk, ak))
        # body edits refer to the new key so they apply after the rename
        _diff_value(f"/encoding/{ak}", b_enc[bk], a_enc[ak], out)
    for key in only_before:
        out.append(DiffEntry(f"/encoding/{key}", "removed", b_enc[key], None))
    for key in only_after:
        if key not in matched_after:
            out.append(DiffEntry(f"/encoding/{key}", "added", None, a_enc[key]))

    _diff_value("/data", bd.get("data"), ad.get("data"), out)
    passthrough = [k for k in bd if k not in ("mark", "encoding", "data")]
    passthrough += [k for k in ad if k not in ("mark", "encoding", "data") and k not in passthrough]
    for key in passthrough:
        _diff_value(f"/{key}", bd.get(key), ad.get(key), out)
    return tuple(out)


def _set_path(obj: dict, parts: list[str], value: Any, remove: bool) -> None:
    cur = obj
    for part in parts[:-1]:
        cur = cur.setdefault(part, {})
    if remove:
        cur.pop(parts[-1], None)
    else:
        cur[parts[-1]] = value


def apply_diff(spec: ChartSpec, diff: tuple[DiffEntry, ...]) -> ChartSpec:
    """Apply a diff produced by diff_specs to its before spec."""
    obj = spec_to_dict(spec)
    for entry in diff:
        parts = [p for p in entry.path.split("/") if p]
        if (
            entry.kind == "changed"
            and len(parts) == 2
            and parts[0] == "encoding"
            and isinstance(entry.before, str)
            and isinstance(entry.after, str)
        ):
            # channel rename: move the encoding body to the new key in place
            enc_obj = obj.get("encoding", {})
            if entry.before in enc_obj:
                items = [
                    (entry.after if k == entry.before else k, v)
                    for k, v in enc_obj.items()
                ]
                obj["encoding"] = dict(items)
            continue
        if entry.kind == "removed":
            _set_path(obj, parts, None, remove=True)
        else:
            _set_path(obj, parts, entry.after, remove=False)
    return parse_spec_dict(obj)


def diff_to_json(diff: tuple[DiffEntry, ...]) -> list[dict]:
    return [
        {"path": e.path, "kind": e.kind, "before": e.before, "after": e.after}
        for e in diff
    ]


def clone_encoding(enc: Encoding, **changes: Any) -> Encoding:
    return replace(enc, **changes)
