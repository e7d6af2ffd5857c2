"""HTTP service over the engine: lint, fix, apply, and rule metadata.

Stateless by design. Every request carries the spec (and optionally
dataset rows plus config overrides); responses are pure functions of
the body. Bind address and port come from VIZLINT_HOST / VIZLINT_PORT.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from typing import Any

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .actions import Action, ActionError, apply_actions
from .facts import extract_facts
from .fixer import fix, load_config
from .profiling import DataError, DatasetProfile, profile_dataset
from .rules import lint, load_default_catalog
from .spec_model import (
    ChartSpec,
    SpecParseError,
    SpecStructureError,
    parse_spec_dict,
    spec_to_dict,
)

app = FastAPI(title="vizlint", version="0.1.0")

app.add_middleware(
    CORSMiddleware,
    allow_origins=[os.environ.get("VIZLINT_CORS_ORIGIN", "*")],
    allow_methods=["*"],
    allow_headers=["*"],
)


async def _body(request: Request) -> dict:
    try:
        body = await request.json()
    except json.JSONDecodeError:
        raise HTTPException(status_code=400, detail="request body is not valid JSON")
    if not isinstance(body, dict):
        raise HTTPException(status_code=400, detail="request body must be a JSON object")
    return body


def _parse_request_spec(body: dict) -> ChartSpec:
    if "spec" not in body:
        raise HTTPException(status_code=400, detail="missing required key: spec")
    try:
        return parse_spec_dict(body["spec"])
    except (SpecParseError, SpecStructureError) as exc:
        raise HTTPException(status_code=422, detail=f"spec does not parse: {exc}")


def _request_profile(body: dict, spec: ChartSpec) -> DatasetProfile | None:
    data = body.get("data")
    if data is None and spec.data is not None and spec.data.values:
        data = [dict(r) for r in spec.data.values]
    if data is None:
        return None
    if isinstance(data, dict) and isinstance(data.get("values"), list):
        data = data["values"]
    if not isinstance(data, list):
        raise HTTPException(
            status_code=400, detail="data must be a list of rows or {values: [...]}"
        )
    try:
        return profile_dataset(data)
    except DataError as exc:
        raise HTTPException(status_code=422, detail=f"data does not profile: {exc}")


def _spec_hash(spec_obj: Any) -> str:
    canonical = json.dumps(spec_obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


@app.post("/lint")
async def lint_endpoint(request: Request) -> JSONResponse:
    body = await _body(request)
    spec = _parse_request_spec(body)
    profile = _request_profile(body, spec)
    started = time.perf_counter()
    violations = lint(extract_facts(spec, profile), load_default_catalog())
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    return JSONResponse(
        {
            "spec_hash": _spec_hash(body["spec"]),
            "violations": [v.to_json() for v in violations],
            "timing_ms": elapsed_ms,
        }
    )


@app.post("/fix")
async def fix_endpoint(request: Request) -> JSONResponse:
    body = await _body(request)
    spec = _parse_request_spec(body)
    profile = _request_profile(body, spec)
    config = None
    overrides = body.get("config")
    if overrides is not None:
        if not isinstance(overrides, dict):
            raise HTTPException(status_code=400, detail="config must be an object")
        config = load_config(overrides)
    plan = fix(spec, profile, config=config)
    plan_json = plan.to_json()
    return JSONResponse(
        {
            "plan": plan_json,
            "revised_spec": plan_json["revised_spec"],
            "diff": plan_json["diff"],
            "alternatives": plan_json["alternatives"],
        }
    )


@app.post("/apply")
async def apply_endpoint(request: Request) -> JSONResponse:
    body = await _body(request)
    spec = _parse_request_spec(body)
    raw_actions = body.get("actions", [])
    if not isinstance(raw_actions, list):
        raise HTTPException(status_code=400, detail="actions must be a list")
    actions = []
    for item in raw_actions:
        if not isinstance(item, dict) or "name" not in item:
            raise HTTPException(status_code=400, detail="each action needs a name")
        actions.append(
            Action(
                name=str(item["name"]),
                channel=item.get("channel"),
                value=item.get("value"),
            )
        )
    try:
        revised = apply_actions(spec, actions)
    except ActionError as exc:
        raise HTTPException(status_code=422, detail=f"action does not apply: {exc}")
    return JSONResponse({"spec": spec_to_dict(revised)})


@app.get("/rules")
async def rules_endpoint() -> JSONResponse:
    catalog = load_default_catalog()
    return JSONResponse(
        {"version": catalog.version, "rules": catalog.to_json()}
    )


def main() -> None:
    import uvicorn

    uvicorn.run(
        app,
        host=os.environ.get("VIZLINT_HOST", "127.0.0.1"),
        port=int(os.environ.get("VIZLINT_PORT", "8710")),
    )


if __name__ == "__main__":
    main()
