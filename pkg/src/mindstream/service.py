"""HTTP service exposing one engine session to clients.

Every response is wrapped in an envelope carrying either a payload or a
structured error, so the workbench can treat all endpoints uniformly.
Mutating endpoints are serialized through one lock; reads run freely.
"""

from __future__ import annotations

import threading
from typing import Any, Literal, Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, model_validator

from .model import WireFormatError
from .priority import PriorityFunction, ThresholdError
from .session import (
    FutureQueryError,
    Session,
    StaleRequestError,
    UnknownRequestError,
    delta_to_document,
    dropped_to_document,
    request_to_document,
    snapshot_to_document,
)
from .store import UnknownActorError


class ErrorInfo(BaseModel):
    code: str
    message: str


class Envelope(BaseModel):
    """Uniform response wrapper: exactly one of payload/error is set."""

    status: Literal["ok", "error"]
    payload: Any = None
    error: Optional[ErrorInfo] = None


class StepRequest(BaseModel):
    input: str


class ResolveRequest(BaseModel):
    """Either name the chosen actor or ask for a discard, never both."""

    actor: Optional[str] = None
    discard: bool = False

    @model_validator(mode="after")
    def _exactly_one_action(self) -> "ResolveRequest":
        if (self.actor is None) == (not self.discard):
            raise ValueError("provide exactly one of 'actor' or 'discard': true")
        return self


def _ok(payload: Any, status_code: int = 200) -> JSONResponse:
    body = Envelope(status="ok", payload=payload).model_dump(exclude={"error"})
    return JSONResponse(status_code=status_code, content=body)


def _err(status_code: int, code: str, message: str) -> JSONResponse:
    envelope = Envelope(status="error", error=ErrorInfo(code=code, message=message))
    return JSONResponse(
        status_code=status_code, content=envelope.model_dump(exclude={"payload"})
    )


_ERROR_MAP: list[tuple[type[Exception], int, str]] = [
    (UnknownActorError, 404, "UNKNOWN_ACTOR"),
    (UnknownRequestError, 404, "UNKNOWN_REQUEST"),
    (StaleRequestError, 409, "STALE_REQUEST"),
    (FutureQueryError, 422, "FUTURE_POSITION"),
    (WireFormatError, 422, "WIRE_FORMAT"),
    (ThresholdError, 422, "INVALID_DELTA"),
    (ValueError, 422, "INVALID_INPUT"),
]


def _engine_error(exc: Exception) -> JSONResponse:
    for exc_type, status_code, code in _ERROR_MAP:
        if isinstance(exc, exc_type):
            return _err(status_code, code, str(exc))
    raise exc


def _parse_function(fn: str) -> PriorityFunction:
    try:
        return PriorityFunction(fn.lower())
    except ValueError:
        raise ValueError(f"unknown priority function {fn!r}; use f1, f2 or f3") from None


def create_app(session: Session) -> FastAPI:
    """Build the service around one session instance."""
    app = FastAPI(title="mindstream", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.session = session
    app.state.write_lock = threading.Lock()

    @app.exception_handler(RequestValidationError)
    async def _validation_handler(request: Request, exc: RequestValidationError):
        return _err(422, "VALIDATION", str(exc.errors()))

    @app.get("/actors")
    def list_actors() -> JSONResponse:
        return _ok(session.actors())

    @app.get("/actors/{name}/snapshot")
    def actor_snapshot(
        name: str,
        fn: str = "f1",
        c: Optional[int] = None,
        delta: Optional[float] = None,
    ) -> JSONResponse:
        try:
            snapshot = session.snapshot(name, _parse_function(fn), c, delta)
        except Exception as exc:  # noqa: BLE001 - mapped to envelope codes
            return _engine_error(exc)
        return _ok(snapshot_to_document(snapshot))

    @app.post("/stream/step")
    def stream_step(body: StepRequest) -> JSONResponse:
        with app.state.write_lock:
            try:
                delta = session.step(body.input)
            except Exception as exc:  # noqa: BLE001
                return _engine_error(exc)
        return _ok(delta_to_document(delta))

    @app.get("/resolutions")
    def list_resolutions() -> JSONResponse:
        return _ok([request_to_document(r) for r in session.pending_requests()])

    @app.post("/resolutions/{request_id}")
    def settle_resolution(request_id: str, body: ResolveRequest) -> JSONResponse:
        with app.state.write_lock:
            try:
                if body.discard:
                    delta = session.discard(request_id)
                else:
                    delta = session.resolve(request_id, body.actor)
            except Exception as exc:  # noqa: BLE001
                return _engine_error(exc)
        return _ok(delta_to_document(delta))

    @app.get("/session")
    def export_session() -> JSONResponse:
        return _ok(session.to_document())

    @app.get("/dropped")
    def list_dropped() -> JSONResponse:
        return _ok([dropped_to_document(d) for d in session.dropped])

    return app
