"""HTTP/JSON API for the what-if workbench.

Workspaces live in memory only. Each holds a goal model, a context
schema, and a mutable preference catalogue; catalogue edits re-validate
and apply atomically under a per-workspace lock, bumping a version
number. Responses carry the version; sending `If-Match-Version` with a
stale value yields 409. Rankings are JSON mirrors of the text ranking
document (rationals rendered with the same integer/decimal/fraction
rule).
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Header, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import dsl
from .diagnostics import Diagnostic, DiagnosticError, errors
from .model import (
    ContextSchema,
    GoalModel,
    PreferenceCatalogue,
    RankingReport,
    Situation,
    bind,
)
from .scoring import MODES, PROPORTIONAL, rank


def _diag_json(diag: Diagnostic) -> dict:
    out = {"rule": diag.rule, "message": diag.message, "severity": diag.severity}
    if diag.span is not None:
        out["file"] = diag.span.file
        out["line"] = diag.span.line
        out["column"] = diag.span.column
    return out


def _solution_json(sol) -> dict:
    return {
        "tasks": list(sol.tasks),
        "perSoftgoal": {sg: dsl.format_rational(v) for sg, v in sorted(sol.per_softgoal.items())},
        "perHardgoal": {hg: v for hg, v in sorted(sol.per_hardgoal.items())},
        "sps": dsl.format_rational(sol.sps),
        "hps": sol.hps,
        "psd": dsl.format_rational(sol.psd),
        "psdExact": [sol.psd.numerator, sol.psd.denominator],
    }


def _report_json(report: RankingReport) -> dict:
    return {
        "mode": report.mode,
        "situation": dict(report.situation),
        "relevant": list(report.relevant),
        "solutions": [_solution_json(s) for s in report.solutions],
    }


@dataclass
class Workspace:
    id: str
    model: GoalModel
    schema: ContextSchema
    catalogue: PreferenceCatalogue
    catalogue_text: str
    version: int = 1
    lock: threading.Lock = field(default_factory=threading.Lock)


class CreateWorkspaceBody(BaseModel):
    model: str
    schema_text: str = Field(alias="schema")  # field name avoids BaseModel.schema
    catalogue: str

    model_config = {"populate_by_name": True}


class RankBody(BaseModel):
    situation: dict[str, str]
    mode: str | None = None
    top: int | None = None


class CompareBody(BaseModel):
    left: dict[str, str]
    right: dict[str, str]
    mode: str | None = None


class CatalogueBody(BaseModel):
    catalogue: str


def _http_diags(status: int, diags: list[Diagnostic]) -> HTTPException:
    return HTTPException(status_code=status,
                         detail={"diagnostics": [_diag_json(d) for d in diags]})


def _parse_or_422(value, diags):
    if value is None or errors(diags):
        raise _http_diags(422, list(diags))
    return value, list(diags)


def _situation_from(values: dict[str, str], schema: ContextSchema) -> Situation:
    text = "\n".join(f"{name}={value}" for name, value in values.items())
    situation, diags = dsl.parse_situation(text, schema, "<situation>")
    if situation is None or errors(diags):
        raise _http_diags(422, list(diags))
    return situation


@dataclass(frozen=True)
class _Snapshot:
    """Consistent read of one workspace, taken under its lock; ranking
    then runs outside the lock so readers never queue behind each other."""
    model: GoalModel
    schema: ContextSchema
    catalogue: PreferenceCatalogue
    version: int


def _rank_or_422(snap: _Snapshot, situation: Situation, mode: str,
                 top: int | None) -> RankingReport:
    if mode not in MODES:
        raise HTTPException(status_code=422, detail={
            "diagnostics": [{"rule": "UnknownMode", "severity": "error",
                             "message": f"unknown scoring mode {mode!r}"}]})
    if top is not None and top < 1:
        raise HTTPException(status_code=422, detail={
            "diagnostics": [{"rule": "BadTop", "severity": "error",
                             "message": "top must be at least 1"}]})
    try:
        report = rank(snap.model, snap.catalogue, snap.schema, situation, mode=mode)
    except DiagnosticError as e:
        raise _http_diags(422, list(e.diagnostics)) from e
    if top is not None and top < len(report.solutions):
        report = RankingReport(situation=report.situation, mode=report.mode,
                               relevant=report.relevant,
                               solutions=report.solutions[:top])
    return report


def create_app(fixtures: str | None = None) -> FastAPI:
    app = FastAPI(title="goalrank", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"], expose_headers=["Workspace-Version"])

    workspaces: dict[str, Workspace] = {}
    ids = itertools.count(1)
    registry_lock = threading.Lock()

    def get_ws(workspace_id: str) -> Workspace:
        ws = workspaces.get(workspace_id)
        if ws is None:
            raise HTTPException(status_code=404,
                                detail={"error": f"unknown workspace {workspace_id!r}"})
        return ws

    def check_version(ws: Workspace, if_match: str | None) -> None:
        if if_match is None:
            return
        try:
            expected = int(if_match)
        except ValueError:
            raise HTTPException(status_code=409,
                                detail={"error": f"bad If-Match-Version {if_match!r}",
                                        "version": ws.version}) from None
        if expected != ws.version:
            raise HTTPException(status_code=409,
                                detail={"error": "workspace version mismatch",
                                        "version": ws.version})

    def snapshot(ws: Workspace, if_match: str | None) -> _Snapshot:
        with ws.lock:
            check_version(ws, if_match)
            return _Snapshot(ws.model, ws.schema, ws.catalogue, ws.version)

    def make_workspace(workspace_id: str, model_text: str, schema_text: str,
                       catalogue_text: str) -> tuple[Workspace, list[Diagnostic]]:
        model, d1 = _parse_or_422(*dsl.parse_goal_model(model_text, "model.gm"))
        schema, d2 = _parse_or_422(*dsl.parse_context_schema(schema_text, "schema.ctx"))
        catalogue, d3 = _parse_or_422(*dsl.parse_catalogue(catalogue_text, "catalogue.prefs"))
        bound = bind(catalogue, model, schema)
        if not bound.ok:
            raise _http_diags(422, list(bound.diagnostics))
        ws = Workspace(id=workspace_id, model=model, schema=schema,
                       catalogue=catalogue, catalogue_text=catalogue_text)
        return ws, d1 + d2 + d3 + list(bound.diagnostics)

    def versioned(ws: Workspace, payload: dict, status: int = 200) -> JSONResponse:
        return JSONResponse(payload, status_code=status,
                            headers={"Workspace-Version": str(ws.version)})

    @app.post("/workspaces", status_code=201)
    def create_workspace(body: CreateWorkspaceBody):
        with registry_lock:
            workspace_id = f"w{next(ids)}"
        ws, diags = make_workspace(workspace_id, body.model, body.schema_text, body.catalogue)
        workspaces[ws.id] = ws
        return versioned(ws, {
            "id": ws.id, "version": ws.version,
            "diagnostics": [_diag_json(d) for d in diags],
        }, status=201)

    @app.get("/workspaces")
    def list_workspaces():
        return {"workspaces": [
            {"id": ws.id, "version": ws.version, "root": ws.model.root}
            for ws in sorted(workspaces.values(), key=lambda w: w.id)
        ]}

    @app.get("/workspaces/{workspace_id}/schema")
    def get_schema(workspace_id: str):
        ws = get_ws(workspace_id)
        return versioned(ws, {
            "version": ws.version,
            "elements": [{"name": name, "values": list(domain)}
                         for name, domain in ws.schema.elements],
        })

    @app.get("/workspaces/{workspace_id}/catalogue")
    def get_catalogue(workspace_id: str):
        ws = get_ws(workspace_id)
        return versioned(ws, {"version": ws.version, "catalogue": ws.catalogue_text})

    @app.put("/workspaces/{workspace_id}/catalogue")
    def put_catalogue(workspace_id: str, body: CatalogueBody,
                      if_match_version: str | None = Header(default=None)):
        ws = get_ws(workspace_id)
        with ws.lock:
            check_version(ws, if_match_version)
            catalogue, diags = dsl.parse_catalogue(body.catalogue, "catalogue.prefs")
            if catalogue is None or errors(diags):
                raise _http_diags(422, list(diags))
            bound = bind(catalogue, ws.model, ws.schema)
            if not bound.ok:
                raise _http_diags(422, list(bound.diagnostics))
            # all checks passed: apply and version atomically
            ws.catalogue = catalogue
            ws.catalogue_text = body.catalogue
            ws.version += 1
            return versioned(ws, {
                "version": ws.version,
                "diagnostics": [_diag_json(d) for d in diags + list(bound.diagnostics)],
            })

    @app.post("/workspaces/{workspace_id}/rank")
    def rank_workspace(workspace_id: str, body: RankBody,
                       if_match_version: str | None = Header(default=None)):
        snap = snapshot(get_ws(workspace_id), if_match_version)
        situation = _situation_from(body.situation, snap.schema)
        report = _rank_or_422(snap, situation, body.mode or PROPORTIONAL, body.top)
        return JSONResponse({"version": snap.version, **_report_json(report)},
                            headers={"Workspace-Version": str(snap.version)})

    @app.post("/workspaces/{workspace_id}/compare")
    def compare_workspace(workspace_id: str, body: CompareBody,
                          if_match_version: str | None = Header(default=None)):
        snap = snapshot(get_ws(workspace_id), if_match_version)
        mode = body.mode or PROPORTIONAL
        left = _rank_or_422(snap, _situation_from(body.left, snap.schema), mode, None)
        right = _rank_or_422(snap, _situation_from(body.right, snap.schema), mode, None)
        right_by_tasks = {s.tasks: (i, s) for i, s in enumerate(right.solutions)}
        deltas = []
        for pos, sol in enumerate(left.solutions):
            rank_right, other = right_by_tasks[sol.tasks]  # same model, same solution set
            deltas.append({
                "tasks": list(sol.tasks),
                "psdLeft": dsl.format_rational(sol.psd),
                "psdRight": dsl.format_rational(other.psd),
                "delta": dsl.format_rational(sol.psd - other.psd),
                "rankLeft": pos + 1,
                "rankRight": rank_right + 1,
            })
        return JSONResponse({
            "version": snap.version,
            "left": _report_json(left),
            "right": _report_json(right),
            "deltas": deltas,
        }, headers={"Workspace-Version": str(snap.version)})

    if fixtures is not None:
        _preload(workspaces, ids, Path(fixtures))
    return app


def _preload(workspaces: dict[str, Workspace], ids, root: Path) -> None:
    """One workspace per .gm file, paired with the first schema and
    catalogue (sorted by name) found next to it."""
    schemas = sorted(root.glob("*.ctx"))
    catalogues = sorted(root.glob("*.prefs"))
    if not schemas or not catalogues:
        return
    schema_text = schemas[0].read_text(encoding="utf-8")
    catalogue_text = catalogues[0].read_text(encoding="utf-8")
    for gm in sorted(root.glob("*.gm")):
        workspace_id = f"w{next(ids)}"
        model_text = gm.read_text(encoding="utf-8")
        model, d1 = dsl.parse_goal_model(model_text, gm.name)
        schema, d2 = dsl.parse_context_schema(schema_text, schemas[0].name)
        catalogue, d3 = dsl.parse_catalogue(catalogue_text, catalogues[0].name)
        if model is None or schema is None or catalogue is None:
            continue
        if errors(d1) or errors(d2) or errors(d3) or not bind(catalogue, model, schema).ok:
            continue
        workspaces[workspace_id] = Workspace(
            id=workspace_id, model=model, schema=schema,
            catalogue=catalogue, catalogue_text=catalogue_text)
