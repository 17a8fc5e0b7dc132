"""HTTP facade over refinement sessions, one JSON file per session.

Every mutating request is applied under a per-session lock and written
to disk before the response leaves, so an acknowledged event survives a
process kill.  Clients serialize themselves with the event sequence
number; a duplicate or stale number gets 409 STALE_SEQUENCE instead of
a lost update.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .errors import (
    ContradictoryInformation,
    DimensionError,
    DuplicateId,
    EmptyLog,
    EngineError,
    InconsistentRelation,
    InvalidBounds,
    NotAContraction,
    SchemaError,
    StaleSequence,
    UnknownId,
    WrongVariant,
)
from .model import problem_from_json
from .session import (
    Session,
    create_session,
    event_from_json,
    load_session,
    save_session,
)


class UnknownSession(Exception):
    pass


_STATUS = [
    (SchemaError, 400, "SCHEMA"),
    (DimensionError, 400, "SCHEMA"),
    (DuplicateId, 400, "SCHEMA"),
    (InvalidBounds, 400, "SCHEMA"),
    (UnknownId, 422, "UNKNOWN_ID"),
    (WrongVariant, 422, "WRONG_VARIANT"),
    (NotAContraction, 422, "NOT_A_CONTRACTION"),
    (ContradictoryInformation, 409, "CONTRADICTORY"),
    (InconsistentRelation, 409, "CONTRADICTORY"),
    (StaleSequence, 409, "STALE_SEQUENCE"),
    (EmptyLog, 409, "EMPTY_LOG"),
    (UnknownSession, 404, "NOT_FOUND"),
]


def _error_response(exc: Exception) -> JSONResponse:
    for kind, status, code in _STATUS:
        if isinstance(exc, kind):
            return JSONResponse(status_code=status, content={"code": code, "message": str(exc)})
    return JSONResponse(status_code=500, content={"code": "INTERNAL", "message": str(exc)})


class SessionStore:
    """Sessions cached in memory, durable as one JSON file each."""

    def __init__(self, state_dir: Path):
        self.state_dir = Path(state_dir)
        self.state_dir.mkdir(parents=True, exist_ok=True)
        self._cache: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()

    def lock(self, session_id: str) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(session_id, threading.Lock())

    def path(self, session_id: str) -> Path:
        return self.state_dir / f"{session_id}.json"

    def load(self, session_id: str) -> Session:
        session = self._cache.get(session_id)
        if session is not None:
            return session
        path = self.path(session_id)
        if not path.exists():
            raise UnknownSession(f"no session {session_id!r}")
        session = load_session(path)
        self._cache[session_id] = session
        return session

    def save(self, session: Session) -> None:
        save_session(session, self.path(session.id))
        self._cache[session.id] = session


def create_app(state_dir, cors_origins: tuple[str, ...] = ("*",)) -> FastAPI:
    app = FastAPI(title="paretodialog", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(Path(state_dir))
    app.state.store = store

    async def body_of(request: Request) -> dict:
        try:
            doc = json.loads(await request.body())
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise SchemaError(f"request body is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise SchemaError("request body must be a JSON object")
        return doc

    @app.exception_handler(EngineError)
    async def engine_error(_request, exc):
        return _error_response(exc)

    @app.exception_handler(UnknownSession)
    async def unknown_session(_request, exc):
        return _error_response(exc)

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok"}

    @app.post("/api/v1/sessions", status_code=201)
    async def create(request: Request):
        doc = await body_of(request)
        if "problem" not in doc:
            raise SchemaError("body must carry a 'problem' object")
        problem = problem_from_json(doc["problem"])
        baseline = doc.get("baseline")
        if baseline is not None and (
            not isinstance(baseline, list) or not all(isinstance(b, str) for b in baseline)
        ):
            raise SchemaError("'baseline' must be a list of alternative labels")
        session = create_session(problem, baseline=baseline)
        store.save(session)
        return {
            "session_id": session.id,
            "pareto": session.result.pareto_list(),
            "suggestions": [s.to_json() for s in session.suggestions(5)],
        }

    @app.post("/api/v1/sessions/{session_id}/events")
    async def apply_event(session_id: str, request: Request):
        doc = await body_of(request)
        event = event_from_json(doc)
        with store.lock(session_id):
            session = store.load(session_id)
            delta = session.apply(event)
            store.save(session)
        return delta.to_json()

    @app.post("/api/v1/sessions/{session_id}/undo")
    async def undo(session_id: str):
        with store.lock(session_id):
            session = store.load(session_id)
            session.undo()
            store.save(session)
        return {"pareto": session.result.pareto_list()}

    @app.get("/api/v1/sessions/{session_id}")
    async def snapshot(session_id: str):
        return store.load(session_id).snapshot()

    @app.get("/api/v1/sessions/{session_id}/pareto")
    async def pareto(session_id: str):
        return store.load(session_id).result.to_json()

    @app.get("/api/v1/sessions/{session_id}/suggestions")
    async def suggestions(session_id: str, limit: int = 10):
        session = store.load(session_id)
        return [s.to_json() for s in session.suggestions(limit)]

    @app.get("/api/v1/sessions/{session_id}/history")
    async def history(session_id: str):
        return store.load(session_id).pareto_history().to_json()

    return app
