"""Local annotation backend: session management, tagging, state, exports.

One JSON file per session in the data directory, written with a
write-then-rename discipline, so a crash between writes can never corrupt a
session: restarting recovers exactly the last acknowledged state. Writes
within a session are serialized (last-write-wins); different sessions are
fully independent. The service holds no annotation semantics of its own —
every response is reproducible from the persisted state via the library.
"""

from __future__ import annotations

import dataclasses
import os
import re
import threading
import uuid
from contextlib import asynccontextmanager
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import io_formats, scoring, tagger
from .errors import FactoieError
from .io_formats import AnnotationState

_CODE_PATTERN = re.compile(r"(?<=[a-z])(?=[A-Z])")


def error_code(exc: FactoieError) -> str:
    return _CODE_PATTERN.sub("_", type(exc).__name__).lower()


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclasses.dataclass
class Session:
    id: str
    state: AnnotationState
    created: str
    updated: str
    dirty: bool = False


class SessionStore:
    """Disk-backed session registry with per-session write serialization."""

    def __init__(self, data_dir: Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def _path(self, session_id: str) -> Path:
        return self.data_dir / f"{session_id}.json"

    def _lock(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(session_id, threading.Lock())

    def _persist(self, session: Session):
        """Write-then-rename so readers and crashes only ever see whole states."""
        path = self._path(session.id)
        tmp = path.with_name(path.name + ".tmp")
        data = io_formats.save_state(session.state)
        with open(tmp, "wb") as handle:
            handle.write(data)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp, path)

    def create(self, state: AnnotationState) -> Session:
        session = Session(
            id=uuid.uuid4().hex, state=state, created=_now(), updated=_now()
        )
        with self._lock(session.id):
            self._persist(session)
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session | None:
        session = self._sessions.get(session_id)
        if session is not None:
            return session
        # recover sessions persisted by an earlier run
        path = self._path(session_id)
        if not path.is_file():
            return None
        with self._lock(session_id):
            if session_id not in self._sessions:
                state = io_formats.load_state(path.read_bytes())
                stamp = _now()
                self._sessions[session_id] = Session(
                    id=session_id, state=state, created=stamp, updated=stamp
                )
        return self._sessions[session_id]

    def replace_state(self, session: Session, state: AnnotationState):
        with self._lock(session.id):
            session.dirty = True
            session.state = state
            self._persist(session)
            session.updated = _now()
            session.dirty = False

    def flush_all(self):
        for session_id, session in list(self._sessions.items()):
            with self._lock(session_id):
                self._persist(session)


def create_app(
    data_dir: Path | str,
    tagger_config: tagger.TaggerConfig | None = None,
    static_dir: Path | str | None = None,
) -> FastAPI:
    cfg = tagger_config if tagger_config is not None else tagger.TaggerConfig()
    store = SessionStore(Path(data_dir))

    @asynccontextmanager
    async def lifespan(_: FastAPI):
        yield
        store.flush_all()  # clean shutdown leaves every session file current

    app = FastAPI(title="factoie annotation service", lifespan=lifespan)
    app.state.store = store

    def fail(status: int, exc: FactoieError) -> JSONResponse:
        return JSONResponse(
            status_code=status, content={"error": error_code(exc), "detail": str(exc)}
        )

    def not_found(kind: str, item_id: str) -> JSONResponse:
        return JSONResponse(
            status_code=404,
            content={"error": "not_found", "detail": f"unknown {kind} {item_id!r}"},
        )

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    @app.post("/api/sessions", status_code=201)
    async def create_session(request: Request):
        body = await request.body()
        try:
            pairs = io_formats.load_sentences(body)
            sentences = tuple(tagger.tag(text, sid, cfg) for sid, text in pairs)
        except FactoieError as exc:
            return fail(400, exc)
        state = AnnotationState(
            sentences=sentences,
            synsets={},
            cursor=sentences[0].id,
            meta={"created": _now()},
        )
        session = store.create(state)
        return JSONResponse(
            status_code=201,
            content={"session_id": session.id, "sentence_count": len(sentences)},
        )

    @app.get("/api/sessions/{session_id}/sentences/{sentence_id}")
    def get_sentence(session_id: str, sentence_id: str):
        session = store.get(session_id)
        if session is None:
            return not_found("session", session_id)
        try:
            sentence = session.state.sentence_by_id(sentence_id)
        except KeyError:
            return not_found("sentence", sentence_id)
        return io_formats.sentence_to_json(sentence)

    @app.get("/api/sessions/{session_id}/state")
    def get_state(session_id: str):
        session = store.get(session_id)
        if session is None:
            return not_found("session", session_id)
        return Response(
            content=io_formats.save_state(session.state),
            media_type="application/json",
            headers={"X-Updated": session.updated},
        )

    @app.put("/api/sessions/{session_id}/state", status_code=204)
    async def put_state(session_id: str, request: Request):
        session = store.get(session_id)
        if session is None:
            return not_found("session", session_id)
        try:
            state = io_formats.load_state(await request.body())
        except FactoieError as exc:
            return fail(400, exc)
        known = {s.id for s in session.state.sentences}
        foreign = {s.id for s in state.sentences} - known
        if foreign:
            return JSONResponse(
                status_code=409,
                content={
                    "error": "unknown_sentence",
                    "detail": f"state references sentences not in this session: "
                    f"{sorted(foreign)}",
                },
            )
        store.replace_state(session, state)
        return Response(status_code=204)

    @app.get("/api/sessions/{session_id}/export")
    def export(session_id: str, format: str = "tsv"):
        session = store.get(session_id)
        if session is None:
            return not_found("session", session_id)
        if format == "tsv":
            content, media_type = io_formats.export_tsv(session.state), "text/tab-separated-values"
        elif format == "json":
            content, media_type = io_formats.save_state(session.state), "application/json"
        else:
            return JSONResponse(
                status_code=400,
                content={
                    "error": "unknown_format",
                    "detail": f"format must be 'tsv' or 'json', not {format!r}",
                },
            )
        filename = f"annotations-{session_id}.{format}"
        return Response(
            content=content,
            media_type=media_type,
            headers={"Content-Disposition": f'attachment; filename="{filename}"'},
        )

    @app.get("/api/sessions/{session_id}/lint")
    def lint(session_id: str):
        session = store.get(session_id)
        if session is None:
            return not_found("session", session_id)
        diagnostics = scoring.lint_gold(session.state.to_benchmark())
        return {"diagnostics": [dataclasses.asdict(d) for d in diagnostics]}

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
