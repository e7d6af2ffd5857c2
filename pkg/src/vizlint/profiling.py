"""Dataset profiling: column types, cardinality, extent, sign information.

The linter trusts the data over the spec, so every declared data property
is checked against what the rows actually contain. Inference is total:
every column gets exactly one of quantitative, ordinal, nominal, temporal.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .spec_model import VizlintError

ORDINAL_CARDINALITY_LIMIT = 20

_ISO_DATE = re.compile(r"^\d{4}-\d{2}-\d{2}([T ].*)?$")
_NUMBER = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


class DataError(VizlintError):
    pass


class UnknownColumnError(VizlintError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"column {name!r} does not exist in the dataset")


@dataclass(frozen=True)
class FieldProfile:
    name: str
    type: str  # quantitative | ordinal | nominal | temporal
    cardinality: int
    extent: tuple[Any, Any] | None
    has_nonpositive: bool
    null_count: int


@dataclass(frozen=True)
class DatasetProfile:
    columns: tuple[FieldProfile, ...]
    row_count: int

    def lookup(self, name: str) -> FieldProfile:
        prof = self.get(name)
        if prof is None:
            raise UnknownColumnError(name)
        return prof

    def get(self, name: str) -> FieldProfile | None:
        for col in self.columns:
            if col.name == name:
                return col
        return None

    def column_names(self) -> tuple[str, ...]:
        return tuple(col.name for col in self.columns)


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _is_iso_date(value: Any) -> bool:
    return isinstance(value, str) and _ISO_DATE.match(value) is not None


def _profile_column(name: str, values: list[Any]) -> FieldProfile:
    present = [v for v in values if v is not None]
    null_count = len(values) - len(present)
    distinct = len({str(v) for v in present})

    if present and all(_is_number(v) for v in present):
        all_int = all(float(v).is_integer() for v in present)
        ftype = "ordinal" if all_int and distinct <= ORDINAL_CARDINALITY_LIMIT else "quantitative"
        return FieldProfile(
            name=name,
            type=ftype,
            cardinality=distinct,
            extent=(min(present), max(present)),
            has_nonpositive=any(v <= 0 for v in present),
            null_count=null_count,
        )
    if present and all(_is_iso_date(v) for v in present):
        return FieldProfile(
            name=name,
            type="temporal",
            cardinality=distinct,
            extent=(min(present), max(present)),
            has_nonpositive=False,
            null_count=null_count,
        )
    return FieldProfile(
        name=name,
        type="nominal",
        cardinality=distinct,
        extent=None,
        has_nonpositive=False,
        null_count=null_count,
    )


def profile_rows(rows: list[dict]) -> DatasetProfile:
    """Profile a list of row objects sharing one column set.

    Raises DataError on an empty table or when a row introduces a column
    the first row does not have.
    """
    if not rows:
        raise DataError("dataset has no rows")
    columns = list(rows[0].keys())
    known = set(columns)
    table: dict[str, list[Any]] = {c: [] for c in columns}
    for i, row in enumerate(rows):
        if not isinstance(row, dict):
            raise DataError(f"row {i} is not an object")
        stray = [k for k in row if k not in known]
        if stray:
            raise DataError(f"row {i} is ragged: unexpected column {stray[0]!r}")
        for c in columns:
            table[c].append(row.get(c))
    return DatasetProfile(
        columns=tuple(_profile_column(c, table[c]) for c in columns),
        row_count=len(rows),
    )


def _coerce_csv_column(values: list[str | None]) -> list[Any]:
    present = [v for v in values if v is not None]
    if present and all(_NUMBER.match(v) for v in present):
        def conv(v: str | None) -> Any:
            if v is None:
                return None
            f = float(v)
            return int(f) if f.is_integer() and "." not in v and "e" not in v.lower() else f
        return [conv(v) for v in values]
    return values


def read_csv_rows(text: str) -> list[dict]:
    reader = csv.reader(text.splitlines())
    try:
        header = next(reader)
    except StopIteration:
        raise DataError("dataset has no rows") from None
    rows: list[dict] = []
    for i, record in enumerate(reader):
        if not record:
            continue
        if len(record) != len(header):
            raise DataError(
                f"row {i} is ragged: expected {len(header)} columns, got {len(record)}"
            )
        rows.append({h: (cell if cell != "" else None) for h, cell in zip(header, record)})
    if not rows:
        raise DataError("dataset has no rows")
    # column-wise numeric coercion, so "42" counts as a number but "n/a" blocks it
    for col in header:
        coerced = _coerce_csv_column([row[col] for row in rows])
        for row, value in zip(rows, coerced):
            row[col] = value
    return rows


def load_rows(path: str | Path) -> list[dict]:
    """Read rows from a .json (array of objects) or .csv file."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise DataError(f"cannot read data file {p}: {exc}") from exc
    if p.suffix.lower() == ".csv":
        return read_csv_rows(text)
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataError(f"malformed JSON data in {p}: {exc.msg} (line {exc.lineno})") from exc
    if not isinstance(rows, list):
        raise DataError(f"data file {p} must hold an array of row objects")
    return rows


def profile_dataset(source: str | Path | list[dict]) -> DatasetProfile:
    """Profile a dataset given as a file path or an in-memory row list."""
    rows = source if isinstance(source, list) else load_rows(source)
    return profile_rows(rows)
