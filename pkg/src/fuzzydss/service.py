"""HTTP service for interactive what-if analysis.

Sessions are uploaded dataset documents with their computed artifacts kept
in an in-process store.  Mutating endpoints bump the session etag and
recompute; query-parameter what-ifs (scri?alpha=, allocation?tvp=) are
computed on the fly and never touch stored state, so repeated GETs under an
unchanged etag return identical bodies.
"""
from __future__ import annotations

import threading
import uuid
from dataclasses import replace

from fastapi import FastAPI, Header, HTTPException, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from . import topsis
from .dataset import Dataset, DatasetError
from .mcgp import MODES, solve_allocation
from .pipeline import (PipelineStageError, Session, allocation_doc,
                       ranking_result_from_doc, resolve_mcgp_model, run_pipeline)

MAX_BODY_BYTES = 8_000_000


# -- wire models ---------------------------------------------------------


class AppraisalChange(BaseModel):
    supplier: str
    attribute: str
    dm: str
    term: str


class AppraisalPatch(BaseModel):
    changes: list[AppraisalChange] = Field(min_length=1)


class WeightChange(BaseModel):
    attribute: str
    dm: str
    term: str


class WeightPatch(BaseModel):
    changes: list[WeightChange] = Field(min_length=1)


class McgpPatch(BaseModel):
    tvp_floor: float | None = None
    budget_anchor: float | None = None
    budget_min: float | None = None
    budget_max: float | None = None
    lead_anchor: float | None = None
    lead_min: float | None = None
    lead_max: float | None = None
    quantity: float | None = None
    coeff_overrides: dict[str, float] | None = None


class ViolationOut(BaseModel):
    table: str
    row: str
    message: str


class SessionCreated(BaseModel):
    id: str
    etag: str
    artifact_hash: str


class SessionSummary(BaseModel):
    id: str
    name: str
    etag: str
    artifact_hash: str
    stage_hashes: dict[str, str]


class ScriOut(BaseModel):
    alpha: float
    scri: dict[str, float]
    argmax: str
    etag: str


# -- session store -------------------------------------------------------


class _Stored:
    def __init__(self, dataset: Dataset, session: Session):
        self.dataset = dataset
        self.session = session
        self.lock = threading.Lock()

    @property
    def etag(self) -> str:
        return self.session.provenance["artifact_hash"]


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, _Stored] = {}
        self._lock = threading.Lock()

    def create(self, dataset: Dataset) -> tuple[str, _Stored]:
        session = run_pipeline(dataset)
        sid = uuid.uuid4().hex[:12]
        stored = _Stored(dataset, session)
        with self._lock:
            self._sessions[sid] = stored
        return sid, stored

    def get(self, sid: str) -> _Stored:
        stored = self._sessions.get(sid)
        if stored is None:
            raise HTTPException(404, f"session {sid!r} does not exist")
        return stored


def _validation_failure(violations) -> HTTPException:
    detail = [ViolationOut(table=v.table, row=v.row, message=v.message).model_dump()
              for v in violations]
    return HTTPException(422, detail)


def _check_etag(stored: _Stored, if_match: str | None):
    if if_match is not None and if_match != stored.etag:
        raise HTTPException(409, f"etag mismatch: session is at {stored.etag}")


def _recompute(stored: _Stored, dataset: Dataset):
    violations = dataset.validate()
    if violations:
        raise _validation_failure(violations)
    try:
        session = run_pipeline(dataset)
    except (DatasetError, PipelineStageError) as exc:
        raise HTTPException(422, str(exc))
    stored.dataset = dataset
    stored.session = session


def _ranking_result(session: Session, key: str = "ranking") -> topsis.RankingResult:
    return ranking_result_from_doc(session.artifacts[key])


def create_app(store: SessionStore | None = None) -> FastAPI:
    app = FastAPI(title="fuzzydss", version="0.1.0",
                  description="Supplier ranking and order allocation service")
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
                       allow_headers=["*"], expose_headers=["ETag"])
    sessions = store if store is not None else SessionStore()

    @app.middleware("http")
    async def reject_oversize(request: Request, call_next):
        length = request.headers.get("content-length")
        if length and int(length) > MAX_BODY_BYTES:
            return Response(status_code=413, content="request body too large")
        return await call_next(request)

    @app.post("/sessions", status_code=201, response_model=SessionCreated)
    def create_session(document: dict):
        try:
            dataset = Dataset.from_document(document)
        except (DatasetError, KeyError, TypeError, ValueError) as exc:
            raise HTTPException(422, f"malformed dataset document: {exc}")
        violations = dataset.validate()
        if violations:
            raise _validation_failure(violations)
        try:
            sid, stored = sessions.create(dataset)
        except (DatasetError, PipelineStageError) as exc:
            raise HTTPException(422, str(exc))
        return SessionCreated(id=sid, etag=stored.etag,
                              artifact_hash=stored.session.provenance["artifact_hash"])

    @app.get("/sessions/{sid}", response_model=SessionSummary)
    def session_summary(sid: str):
        stored = sessions.get(sid)
        return SessionSummary(
            id=sid, name=stored.dataset.name, etag=stored.etag,
            artifact_hash=stored.session.provenance["artifact_hash"],
            stage_hashes=stored.session.provenance["stage_hashes"])

    @app.get("/sessions/{sid}/ranking")
    def ranking(sid: str, response: Response, group: str = "all"):
        if group not in ("all", "resilience", "cost"):
            raise HTTPException(400, f"unknown group {group!r}")
        stored = sessions.get(sid)
        key = {"all": "ranking", "resilience": "ranking_resilience",
               "cost": "ranking_cost"}[group]
        doc = stored.session.artifacts[key]
        if doc is None:
            raise HTTPException(400, f"session dataset has no {group} group split")
        response.headers["ETag"] = stored.etag
        return doc

    @app.get("/sessions/{sid}/scri")
    def scri(sid: str, response: Response, alpha: float = 0.5):
        if not 0.0 <= alpha <= 1.0:
            raise HTTPException(400, f"alpha must lie in [0, 1], got {alpha}")
        stored = sessions.get(sid)
        arts = stored.session.artifacts
        if arts["ranking_resilience"] is None or arts["ranking_cost"] is None:
            raise HTTPException(400, "session dataset has no group split; "
                                     "the trade-off index is undefined")
        res = arts["ranking_resilience"]["normalized_closeness"]
        cost = arts["ranking_cost"]["normalized_closeness"]
        suppliers = [s["supplier"] for s in arts["ranking"]["scores"]]
        vals = [alpha * r + (1 - alpha) * c for r, c in zip(res, cost)]
        top = max(range(len(vals)), key=lambda i: (vals[i], -i))
        response.headers["ETag"] = stored.etag
        return ScriOut(alpha=alpha, scri=dict(zip(suppliers, vals)),
                       argmax=suppliers[top], etag=stored.etag)

    @app.get("/sessions/{sid}/scri/sweep")
    def scri_sweep(sid: str, response: Response, step: float = 0.1):
        if not 0.0 < step <= 0.5:
            raise HTTPException(400, f"step must lie in (0, 0.5], got {step}")
        stored = sessions.get(sid)
        if stored.session.artifacts["scri"] is None:
            raise HTTPException(400, "session dataset has no group split; "
                                     "the trade-off index is undefined")
        response.headers["ETag"] = stored.etag
        if abs(step - stored.dataset.config.scri_step) < 1e-12:
            return stored.session.artifacts["scri"]
        res = _ranking_result(stored.session, "ranking_resilience")
        cost = _ranking_result(stored.session, "ranking_cost")
        return topsis.scri_sweep(res, cost, step)

    @app.get("/sessions/{sid}/allocation")
    def allocation(sid: str, response: Response, tvp: float | None = None,
                   mode: str = "fixed_total"):
        stored = sessions.get(sid)
        if stored.dataset.mcgp is None:
            raise HTTPException(400, "session dataset has no allocation parameters")
        if mode not in MODES:
            raise HTTPException(400, f"unknown mode {mode!r}")
        response.headers["ETag"] = stored.etag
        if tvp is None and mode == "fixed_total":
            return stored.session.artifacts["allocation"]
        if tvp is not None and tvp < 0:
            raise HTTPException(400, f"tvp must be nonnegative, got {tvp}")
        model = resolve_mcgp_model(stored.dataset, _ranking_result(stored.session))
        if tvp is not None:
            model = replace(model, tvp_floor=tvp)
        plan = solve_allocation(model, mode)
        return allocation_doc(model, plan)

    @app.patch("/sessions/{sid}/appraisals", response_model=SessionCreated)
    def patch_appraisals(sid: str, patch: AppraisalPatch,
                         if_match: str | None = Header(default=None)):
        stored = sessions.get(sid)
        with stored.lock:
            _check_etag(stored, if_match)
            ds = stored.dataset
            appraisals = dict(ds.appraisals)
            scale = ds.performance_scale()
            for ch in patch.changes:
                if ch.term not in scale:
                    raise HTTPException(
                        422, f"({ch.supplier}, {ch.attribute}, {ch.dm}): term "
                             f"{ch.term!r} not in scale {scale.name}")
                appraisals[(ch.supplier, ch.attribute, ch.dm)] = ch.term
            _recompute(stored, replace(ds, appraisals=appraisals))
            return SessionCreated(id=sid, etag=stored.etag,
                                  artifact_hash=stored.session.provenance["artifact_hash"])

    @app.patch("/sessions/{sid}/weights", response_model=SessionCreated)
    def patch_weights(sid: str, patch: WeightPatch,
                      if_match: str | None = Header(default=None)):
        stored = sessions.get(sid)
        with stored.lock:
            _check_etag(stored, if_match)
            ds = stored.dataset
            judgments = dict(ds.weight_judgments)
            scale = ds.weight_scale()
            for ch in patch.changes:
                if ch.term not in scale:
                    raise HTTPException(422, f"({ch.attribute}, {ch.dm}): term "
                                             f"{ch.term!r} not in scale {scale.name}")
                judgments[(ch.attribute, ch.dm)] = ch.term
            _recompute(stored, replace(ds, weight_judgments=judgments))
            return SessionCreated(id=sid, etag=stored.etag,
                                  artifact_hash=stored.session.provenance["artifact_hash"])

    @app.patch("/sessions/{sid}/mcgp", response_model=SessionCreated)
    def patch_mcgp(sid: str, patch: McgpPatch,
                   if_match: str | None = Header(default=None)):
        stored = sessions.get(sid)
        with stored.lock:
            _check_etag(stored, if_match)
            ds = stored.dataset
            if ds.mcgp is None:
                raise HTTPException(422, "session dataset has no allocation parameters")
            fields = {k: v for k, v in patch.model_dump().items()
                      if v is not None and k != "coeff_overrides"}
            try:
                model = replace(ds.mcgp, **fields)
            except ValueError as exc:
                raise HTTPException(422, str(exc))
            overrides = (dict(patch.coeff_overrides)
                         if patch.coeff_overrides is not None
                         else dict(ds.mcgp_coeff_overrides))
            _recompute(stored, replace(ds, mcgp=model,
                                       mcgp_coeff_overrides=overrides))
            return SessionCreated(id=sid, etag=stored.etag,
                                  artifact_hash=stored.session.provenance["artifact_hash"])

    @app.get("/spec")
    def spec():
        return app.openapi()

    return app


app = create_app()
