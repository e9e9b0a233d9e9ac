"""REST service tying sessions, breeding, shader emission and the store together.

The server holds live sessions in memory, addressed by opaque ids; the
browser (or any client) never sees a population, only the display subset
rendered as ready-to-compile shader candidates.  Requests that mutate the
same session are serialized behind a per-session lock; distinct sessions
are fully independent.  Sessions idle for longer than the TTL (2 hours by
default) are dropped.

Mutating endpoints carry no idempotency keys: a blindly retried step will
breed twice.  Clients are expected to retry only reads.

Every error body has the shape ``{"error": <code>, "detail": <message>}``.
"""

from __future__ import annotations

import os
import secrets
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import evolution, store as store_mod
from .codegen import emit_shader
from .expr import ExprError, deserialize
from .evolution import EvolutionParams, Session, ValidationError

DEFAULT_PORT = 8080
DEFAULT_DATA_DIR = "./data"
SESSION_TTL_SECONDS = 2 * 60 * 60

_PARAM_KEYS = (
    "population_size",
    "subset_size",
    "crossover_prob",
    "mutation_prob",
    "tournament_size",
    "seed",
)


class ApiError(Exception):
    def __init__(self, status: int, error: str, detail: str):
        super().__init__(detail)
        self.status = status
        self.error = error
        self.detail = detail


@dataclass
class _SessionEntry:
    session: Session
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_used: float = field(default_factory=time.monotonic)


class _SessionRegistry:
    """Live sessions keyed by id, with lazy TTL eviction."""

    def __init__(self, ttl: float):
        self.ttl = ttl
        self._entries: dict[str, _SessionEntry] = {}
        self._lock = threading.Lock()

    def add(self, session: Session) -> None:
        with self._lock:
            self._purge()
            self._entries[session.id] = _SessionEntry(session)

    def get(self, session_id: str) -> _SessionEntry:
        with self._lock:
            self._purge()
            entry = self._entries.get(session_id)
            if entry is None:
                raise ApiError(404, "not_found", f"no session with id {session_id!r}")
            entry.last_used = time.monotonic()
            return entry

    def _purge(self) -> None:
        cutoff = time.monotonic() - self.ttl
        stale = [sid for sid, e in self._entries.items() if e.last_used < cutoff]
        for sid in stale:
            del self._entries[sid]


def _params_from_overrides(overrides: dict) -> EvolutionParams:
    if not isinstance(overrides, dict):
        raise ApiError(422, "validation_error", "params must be a JSON object")
    unknown = set(overrides) - set(_PARAM_KEYS)
    if unknown:
        raise ApiError(
            422, "validation_error", f"unknown parameter(s): {', '.join(sorted(unknown))}"
        )
    return EvolutionParams(**overrides)


def _candidates(session: Session) -> list[dict]:
    out = []
    for slot, idx in enumerate(session.display):
        artifact = emit_shader(session.population[idx].expr)
        out.append(
            {
                "slot": slot,
                "expr": artifact.expr_text,
                "sexpr": artifact.expr_sexpr,
                "glsl": artifact.glsl_source,
                "dynamic": artifact.dynamic,
            }
        )
    return out


def create_app(
    data_dir: str | Path | None = None,
    static_dir: str | Path | None = None,
    session_ttl: float = SESSION_TTL_SECONDS,
) -> FastAPI:
    """Build the service.  ``DATA_DIR`` / ``STATIC_DIR`` env vars are the fallbacks."""
    data_dir = data_dir or os.environ.get("DATA_DIR", DEFAULT_DATA_DIR)
    static_dir = static_dir or os.environ.get("STATIC_DIR")

    app = FastAPI(title="evoshader", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.store = store_mod.Store(data_dir)
    app.state.sessions = _SessionRegistry(session_ttl)

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status, content={"error": exc.error, "detail": exc.detail}
        )

    @app.exception_handler(RequestValidationError)
    async def _body_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422, content={"error": "validation_error", "detail": str(exc.errors())}
        )

    @app.exception_handler(ValidationError)
    async def _domain_error(request: Request, exc: ValidationError):
        return JSONResponse(
            status_code=422, content={"error": "validation_error", "detail": str(exc)}
        )

    @app.exception_handler(store_mod.StoreValidationError)
    async def _store_error(request: Request, exc: store_mod.StoreValidationError):
        return JSONResponse(
            status_code=422, content={"error": "validation_error", "detail": str(exc)}
        )

    @app.exception_handler(store_mod.NotFoundError)
    async def _missing(request: Request, exc: store_mod.NotFoundError):
        return JSONResponse(
            status_code=404, content={"error": "not_found", "detail": str(exc.args[0])}
        )

    @app.exception_handler(ExprError)
    async def _expr_error(request: Request, exc: ExprError):
        return JSONResponse(
            status_code=422, content={"error": "validation_error", "detail": str(exc)}
        )

    @app.post("/api/sessions")
    def create_session(payload: dict = Body(default={})):
        params = _params_from_overrides(payload.get("params", {}))
        try:
            session = evolution.init_population(params)
        except TypeError as exc:
            raise ApiError(422, "validation_error", str(exc)) from exc
        # The service owns session identity; ids must stay unique even when
        # two sessions share a seed.
        session.id = secrets.token_hex(16)
        app.state.sessions.add(session)
        return {
            "session_id": session.id,
            "generation": session.generation,
            "candidates": _candidates(session),
        }

    @app.post("/api/sessions/{session_id}/step")
    def step_session(session_id: str, payload: dict = Body(default={})):
        entry = app.state.sessions.get(session_id)
        selections = payload.get("selected_slots", [])
        generations = payload.get("generations", 1)
        if not isinstance(selections, list):
            raise ApiError(422, "validation_error", "selected_slots must be a list")
        with entry.lock:
            evolution.step(entry.session, selections, generations)
            return {
                "generation": entry.session.generation,
                "candidates": _candidates(entry.session),
            }

    @app.post("/api/sessions/{session_id}/save")
    def save_candidate(session_id: str, payload: dict = Body(default={})):
        entry = app.state.sessions.get(session_id)
        slot = payload.get("slot")
        name = payload.get("name")
        with entry.lock:
            session = entry.session
            if (
                not isinstance(slot, int)
                or isinstance(slot, bool)
                or not 0 <= slot < len(session.display)
            ):
                raise ApiError(422, "validation_error", f"slot {slot!r} out of range")
            expr = session.population[session.display[slot]].expr
            record = app.state.store.save_transformation(
                name, emit_shader(expr).expr_sexpr
            )
        return record.to_json()

    @app.post("/api/sessions/{session_id}/seed")
    def seed_session(session_id: str, payload: dict = Body(default={})):
        entry = app.state.sessions.get(session_id)
        record_id = payload.get("transformation_id")
        if not isinstance(record_id, str):
            raise ApiError(422, "validation_error", "transformation_id must be a string")
        record = app.state.store.get_transformation(record_id)
        expr = deserialize(record.expr_sexpr)
        with entry.lock:
            evolution.inject(entry.session, expr)
            evolution.select_subset(entry.session)
            return {
                "generation": entry.session.generation,
                "candidates": _candidates(entry.session),
            }

    @app.get("/api/transformations")
    def list_transformations():
        return [r.to_json() for r in app.state.store.list_transformations()]

    @app.get("/api/transformations/{record_id}")
    def get_transformation(record_id: str):
        return app.state.store.get_transformation(record_id).to_json()

    @app.post("/api/models")
    def save_model(payload: dict = Body(default={})):
        model = app.state.store.save_model(
            payload.get("name"),
            payload.get("vertices"),
            payload.get("indices"),
            payload.get("normals"),
        )
        return model.to_json()

    @app.get("/api/models")
    def list_models():
        return [m.to_json() for m in app.state.store.list_models()]

    @app.get("/api/models/{model_id}")
    def get_model(model_id: str):
        return app.state.store.get_model(model_id).to_json()

    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app
