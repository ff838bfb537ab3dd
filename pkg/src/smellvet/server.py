"""Local HTTP facade over detection, catalog, and sessions for the browser UI.

Single reviewer identity per session, no auth: this is a desk-scale tool.
Every mutation is written through to the session file before the response
returns, and a changed file on disk turns further mutations into 409s.
"""

from __future__ import annotations

import threading
import uuid
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from smellvet.agreement import DisjointCandidateSets, agreement_by_smell
from smellvet.catalog import EntityVanished, evaluate_evidence, items_for
from smellvet.detector import DetectionConfig, explain, load_candidates
from smellvet.project import load_project
from smellvet.sessions import (
    InvalidVerdict,
    ReviewSession,
    UnknownCandidate,
    create_session,
    load_session,
    record_answer,
    record_verdict,
    save_session,
    session_fingerprint,
    session_stats,
)


class ApiError(Exception):
    def __init__(self, http_status: int, code: str, message: str):
        super().__init__(message)
        self.http_status = http_status
        self.code = code
        self.message = message

    def response(self) -> JSONResponse:
        return JSONResponse(
            status_code=self.http_status,
            content={"httpStatus": self.http_status, "code": self.code, "message": self.message},
        )


class AnswerBody(BaseModel):
    candidateId: str
    itemId: str
    answer: str = Field(pattern="^(yes|no|unsure|skip)$")


class VerdictBody(BaseModel):
    candidateId: str
    decision: str = Field(pattern="^(accept|reject|skip)$")
    arguments: list[str] = Field(default_factory=list)
    unjustified: bool = False
    idempotencyKey: str | None = None


class SessionCreateBody(BaseModel):
    reviewerId: str
    candidateIds: list[str] | None = None


class _SessionStore:
    """Per-session write-through store with on-disk conflict detection."""

    def __init__(self, directory: Path):
        self.directory = directory
        self.directory.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._fingerprints: dict[str, str] = {}

    def path(self, session_id: str) -> Path:
        return self.directory / f"{session_id}.json"

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.directory.glob("*.json"))

    def load(self, session_id: str) -> ReviewSession:
        path = self.path(session_id)
        if not path.exists():
            raise ApiError(404, "unknown_session", f"no session {session_id}")
        return load_session(path)

    def create(self, session: ReviewSession) -> None:
        with self._lock:
            save_session(session, self.path(session.session_id))
            self._fingerprints[session.session_id] = session_fingerprint(session)

    def mutate(self, session_id: str, mutation) -> ReviewSession:
        """Load, check conflict, apply `mutation(session)`, write through."""
        with self._lock:
            session = self.load(session_id)
            known = self._fingerprints.get(session_id)
            current = session_fingerprint(session)
            if known is not None and known != current:
                raise ApiError(
                    409,
                    "verdict_conflict",
                    "session file changed on disk since this server last wrote it",
                )
            mutation(session)
            save_session(session, self.path(session_id))
            self._fingerprints[session_id] = session_fingerprint(session)
            return session


def create_app(
    candidates_path: str | Path,
    session_dir: str | Path,
    config_path: str | Path | None = None,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    candidates, roots, cfg = load_candidates(candidates_path)
    if config_path:
        cfg = DetectionConfig.from_file(config_path)
    model = load_project(roots) if roots else None
    by_id = {c.id: c for c in candidates}
    root_paths = [Path(r).resolve() for r in roots]
    store = _SessionStore(Path(session_dir))

    app = FastAPI(title="smellvet review API", docs_url=None, redoc_url=None)

    @app.exception_handler(ApiError)
    async def _api_error(_req: Request, exc: ApiError):
        return exc.response()

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_req: Request, exc: RequestValidationError):
        return ApiError(422, "schema_violation", str(exc.errors()[:3])).response()

    def get_candidate(candidate_id: str):
        c = by_id.get(candidate_id)
        if c is None:
            raise ApiError(404, "unknown_candidate", f"no candidate {candidate_id}")
        return c

    @app.get("/api/candidates")
    def list_candidates():
        return {
            "candidates": [
                {**c.as_dict(), "explain": explain(c)} for c in candidates
            ]
        }

    @app.get("/api/candidates/{candidate_id}")
    def candidate_detail(candidate_id: str):
        c = get_candidate(candidate_id)
        items = items_for(c.smell)
        evidence = []
        for item in items:
            if model is None:
                evidence.append(None)
                continue
            try:
                evidence.append(evaluate_evidence(model, c, item, cfg).as_dict())
            except EntityVanished:
                raise ApiError(
                    409, "entity_vanished",
                    f"entity {c.entity} no longer exists in the parsed sources",
                )
        return {
            "candidate": {**c.as_dict(), "explain": explain(c)},
            "items": [
                {"item": item.as_dict(), "evidence": ev}
                for item, ev in zip(items, evidence)
            ],
        }

    @app.get("/api/source")
    def source_slice(path: str, start: int = 1, end: int = 1):
        resolved = Path(path).resolve()
        if not any(resolved.is_relative_to(root) for root in root_paths):
            raise ApiError(404, "unknown_source", f"path outside scanned roots: {path}")
        if not resolved.exists():
            raise ApiError(404, "unknown_source", f"no such file: {path}")
        if start < 1 or end < start:
            raise ApiError(422, "schema_violation", "need 1 <= start <= end")
        lines = resolved.read_text(encoding="utf-8", errors="replace").splitlines()
        window = lines[start - 1 : min(end, len(lines))]
        return {"path": path, "start": start, "end": end, "lines": window}

    @app.post("/api/sessions", status_code=201)
    def create_review_session(body: SessionCreateBody):
        wanted = body.candidateIds or [c.id for c in candidates]
        pairs = []
        for cid in wanted:
            pairs.append((get_candidate(cid).id, get_candidate(cid).smell))
        session = create_session(pairs, body.reviewerId, session_id=uuid.uuid4().hex[:12])
        store.create(session)
        return session.as_dict()

    @app.get("/api/sessions")
    def list_sessions():
        return {"sessions": store.list_ids()}

    @app.get("/api/sessions/{session_id}")
    def session_detail(session_id: str):
        return store.load(session_id).as_dict()

    @app.post("/api/sessions/{session_id}/answers")
    def post_answer(session_id: str, body: AnswerBody):
        get_candidate(body.candidateId)

        def mutation(session: ReviewSession):
            try:
                record_answer(session, body.candidateId, body.itemId, body.answer)
            except UnknownCandidate:
                raise ApiError(404, "unknown_candidate",
                               f"candidate {body.candidateId} not in session")
            except (KeyError, ValueError) as exc:
                raise ApiError(422, "schema_violation", str(exc))

        return store.mutate(session_id, mutation).as_dict()

    @app.post("/api/sessions/{session_id}/verdicts")
    def post_verdict(session_id: str, body: VerdictBody):
        get_candidate(body.candidateId)

        def mutation(session: ReviewSession):
            try:
                record_verdict(
                    session,
                    body.candidateId,
                    body.decision,
                    list(body.arguments),
                    unjustified=body.unjustified,
                    idempotency_key=body.idempotencyKey,
                )
            except UnknownCandidate:
                raise ApiError(404, "unknown_candidate",
                               f"candidate {body.candidateId} not in session")
            except InvalidVerdict as exc:
                raise ApiError(422, "unjustified_verdict", str(exc))

        return store.mutate(session_id, mutation).as_dict()

    @app.get("/api/reports/stats")
    def reports_stats():
        sessions = [store.load(sid) for sid in store.list_ids()]
        return {"sessions": len(sessions), "stats": session_stats(sessions).as_dict()}

    @app.get("/api/reports/agreement")
    def reports_agreement():
        sessions = [store.load(sid) for sid in store.list_ids()]
        try:
            reports = agreement_by_smell(sessions)
        except DisjointCandidateSets as exc:
            raise ApiError(409, "disjoint_candidate_sets", str(exc))
        return {"reports": [r.as_dict() for r in reports]}

    if ui_dir and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
