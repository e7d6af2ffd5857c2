"""HTTP contract tests against the in-process service."""

import json
from functools import lru_cache
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from vizlint.profiling import read_csv_rows
from vizlint.server import app

from conftest import CORPUS_FIXTURES

client = TestClient(app)

DATA = Path(__file__).resolve().parent.parent / "data"
DATA_FILES = {
    "cars": "cars.json",
    "seattle-weather": "seattle-weather.csv",
    "airports": "airports.csv",
}


@lru_cache(maxsize=None)
def dataset_rows(name: str) -> list[dict]:
    path = DATA / DATA_FILES[name]
    if path.suffix == ".json":
        return json.loads(path.read_text())
    return read_csv_rows(path.read_text())

STACKED_POINT = {
    "mark": "point",
    "encoding": {
        "x": {"field": "Origin", "type": "nominal"},
        "y": {"field": "Acceleration", "type": "quantitative", "aggregate": "sum", "stack": "zero"},
        "color": {"field": "Cylinders", "type": "ordinal"},
    },
}


def test_lint_reports_violations_with_hash_and_timing():
    res = client.post("/lint", json={"spec": STACKED_POINT})
    assert res.status_code == 200
    body = res.json()
    assert [v["rule_id"] for v in body["violations"]] == ["stack_mark_compat"]
    assert len(body["spec_hash"]) == 64
    assert body["timing_ms"] >= 0


def test_lint_hash_is_stable_across_key_order():
    reordered = json.loads(json.dumps(STACKED_POINT))
    reordered["encoding"] = dict(reversed(list(reordered["encoding"].items())))
    first = client.post("/lint", json={"spec": STACKED_POINT}).json()
    second = client.post("/lint", json={"spec": reordered}).json()
    assert first["spec_hash"] == second["spec_hash"]


def test_lint_accepts_inline_data_rows():
    spec = {
        "mark": "point",
        "encoding": {
            "x": {"field": "a", "type": "quantitative"},
            "y": {"field": "missing", "type": "quantitative"},
        },
    }
    rows = [{"a": 1.5, "b": 2.5}, {"a": 2.5, "b": 3.5}]
    res = client.post("/lint", json={"spec": spec, "data": rows})
    assert res.status_code == 200
    ids = [v["rule_id"] for v in res.json()["violations"]]
    assert "unknown_field" in ids
    # the {values: [...]} wrapper is accepted too
    wrapped = client.post("/lint", json={"spec": spec, "data": {"values": rows}})
    assert wrapped.json()["violations"] == res.json()["violations"]


def test_fix_returns_plan_revision_and_diff():
    res = client.post("/fix", json={"spec": STACKED_POINT})
    assert res.status_code == 200
    body = res.json()
    assert body["plan"]["selected"][0]["name"] == "CHANGE_MARK"
    assert body["revised_spec"]["mark"] == "bar"
    assert body["plan"]["residuals"] == []
    assert isinstance(body["diff"], list) and body["diff"]
    assert set(body["alternatives"]) == {"stack_mark_compat(C=y)"}


def test_fix_accepts_config_overrides():
    res = client.post(
        "/fix",
        json={
            "spec": STACKED_POINT,
            "config": {"costs": {"CHANGE_MARK": 50}},
        },
    )
    assert res.status_code == 200
    names = [a["name"] for a in res.json()["plan"]["selected"]]
    assert "CHANGE_MARK" not in names


def test_apply_replays_actions():
    actions = [{"name": "CHANGE_MARK", "value": "bar"}]
    res = client.post("/apply", json={"spec": STACKED_POINT, "actions": actions})
    assert res.status_code == 200
    assert res.json()["spec"]["mark"] == "bar"


def test_apply_with_no_actions_echoes_the_spec():
    res = client.post("/apply", json={"spec": STACKED_POINT, "actions": []})
    assert res.status_code == 200
    assert res.json()["spec"] == STACKED_POINT


def test_apply_failed_precondition_is_422():
    actions = [{"name": "REMOVE_BIN", "channel": "y"}]
    res = client.post("/apply", json={"spec": STACKED_POINT, "actions": actions})
    assert res.status_code == 422
    assert "does not apply" in res.json()["detail"]


def test_rules_metadata_lists_the_catalog():
    res = client.get("/rules")
    assert res.status_code == 200
    body = res.json()
    assert body["version"] == "1"
    assert len(body["rules"]) == 41
    sample = body["rules"][0]
    assert set(sample) == {"id", "category", "description", "actions"}


@pytest.mark.parametrize(
    "payload",
    [
        "not json at all",
        json.dumps([1, 2, 3]),
        json.dumps({"nospec": True}),
    ],
    ids=["malformed", "non-object", "missing-spec"],
)
def test_bad_request_bodies_are_400(payload):
    res = client.post("/lint", content=payload, headers={"content-type": "application/json"})
    assert res.status_code == 400


def test_unparseable_spec_is_422():
    res = client.post("/lint", json={"spec": {"encoding": {"x": {}}}})
    assert res.status_code == 422
    assert "spec does not parse" in res.json()["detail"]


def test_unprofilable_data_is_422():
    res = client.post("/lint", json={"spec": STACKED_POINT, "data": []})
    assert res.status_code == 422
    assert "data does not profile" in res.json()["detail"]


def test_fix_then_apply_round_trip_reaches_clean():
    # drive the full remote workflow over the corpus: fix, replay the
    # selected actions through /apply, then lint the result
    for fixture in CORPUS_FIXTURES:
        rows = dataset_rows(fixture["data"]) if fixture.get("data") else None
        body = {"spec": fixture["spec"]}
        if rows is not None:
            body["data"] = rows
        fixed = client.post("/fix", json=body).json()
        actions = [
            {k: a[k] for k in ("name", "channel", "value")}
            for a in fixed["plan"]["selected"]
        ]
        replayed = client.post(
            "/apply", json={"spec": fixture["spec"], "actions": actions}
        )
        assert replayed.status_code == 200, fixture["id"]
        assert replayed.json()["spec"] == fixed["revised_spec"], fixture["id"]
        relint = {"spec": replayed.json()["spec"]}
        if rows is not None:
            relint["data"] = rows
        assert client.post("/lint", json=relint).json()["violations"] == [], fixture["id"]
