"""HTTP service: upload a WoS export, explore the analysis, dispose of it.

Sessions live in memory only.  The uploaded bytes are parsed during
session creation and released immediately afterwards; nothing is ever
written to durable storage, and restarting the service forgets all
sessions.
"""

from __future__ import annotations

import io
import os
import secrets
import threading
import time
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException, Request, UploadFile
from fastapi import Query as QueryParam
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from rpyscope.core import (
    HeatmapMatrix,
    SpectroSeries,
    YearRange,
    multi_rpys,
    standard_rpys,
)
from rpyscope.refindex import (
    IndexRow,
    Query,
    UnknownSortKeyError,
    build_index,
    filter_sort,
)
from rpyscope.wos import ParseReport, parse_export

MAX_TABLE_LIMIT = 40

_ERROR_NAMES = {
    404: "not_found",
    409: "conflict",
    413: "payload_too_large",
    422: "unprocessable",
}


@dataclass
class ServiceConfig:
    max_upload_bytes: int = 15 * 2 ** 20
    session_ttl_seconds: float = 3600.0
    static_dir: str | None = None

    @classmethod
    def from_env(cls, env=os.environ) -> "ServiceConfig":
        return cls(
            max_upload_bytes=int(env.get("RPYSCOPE_MAX_UPLOAD_BYTES", 15 * 2 ** 20)),
            session_ttl_seconds=float(env.get("RPYSCOPE_SESSION_TTL_SECONDS", 3600)),
            static_dir=env.get("RPYSCOPE_STATIC_DIR") or None,
        )


@dataclass
class Session:
    id: str
    mode: str
    range: YearRange
    index: list[IndexRow]
    report: ParseReport
    series: SpectroSeries | None = None
    matrix: HeatmapMatrix | None = None
    created_at: float = field(default_factory=time.monotonic)
    last_access: float = field(default_factory=time.monotonic)


class SessionStore:
    """In-memory session table; mutations serialized, reads lock-free
    once a session is handed out (sessions are immutable after creation)."""

    def __init__(self, ttl_seconds: float):
        self._ttl = ttl_seconds
        self._lock = threading.Lock()
        self._sessions: dict[str, Session] = {}

    def _purge(self, now: float) -> None:
        expired = [sid for sid, s in self._sessions.items() if now - s.last_access > self._ttl]
        for sid in expired:
            del self._sessions[sid]

    def put(self, session: Session) -> None:
        with self._lock:
            self._purge(time.monotonic())
            self._sessions[session.id] = session

    def get(self, session_id: str) -> Session | None:
        now = time.monotonic()
        with self._lock:
            self._purge(now)
            session = self._sessions.get(session_id)
            if session is not None:
                session.last_access = now
            return session

    def delete(self, session_id: str) -> None:
        with self._lock:
            self._sessions.pop(session_id, None)

    def __len__(self) -> int:
        with self._lock:
            self._purge(time.monotonic())
            return len(self._sessions)


def _range_json(rng: YearRange) -> dict:
    return {"from": rng.first, "to": rng.last}


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig.from_env()
    app = FastAPI(title="rpyscope")
    store = SessionStore(config.session_ttl_seconds)
    app.state.sessions = store
    app.state.config = config

    @app.exception_handler(HTTPException)
    async def http_error(request: Request, exc: HTTPException):
        body = {"error": _ERROR_NAMES.get(exc.status_code, "error"), "detail": exc.detail}
        return JSONResponse(status_code=exc.status_code, content=body)

    def fetch(session_id: str) -> Session:
        session = store.get(session_id)
        if session is None:
            raise HTTPException(404, f"no session {session_id}")
        return session

    @app.post("/api/sessions", status_code=201)
    async def create_session(
        file: UploadFile,
        mode: str = "standard",
        from_year: int = QueryParam(1900, alias="from"),
        to_year: int = QueryParam(1999, alias="to"),
    ):
        if mode not in ("standard", "multi"):
            raise HTTPException(422, f"mode must be 'standard' or 'multi', got {mode!r}")
        try:
            rng = YearRange(from_year, to_year)
        except ValueError as exc:
            raise HTTPException(422, str(exc))

        # bound memory while reading; reject as soon as the cap is passed
        chunks = []
        total = 0
        while chunk := await file.read(1 << 20):
            total += len(chunk)
            if total > config.max_upload_bytes:
                await file.close()
                raise HTTPException(
                    413, f"upload exceeds the {config.max_upload_bytes} byte limit"
                )
            chunks.append(chunk)
        await file.close()

        payload = b"".join(chunks)
        del chunks
        records, report = parse_export(io.BytesIO(payload), max_bytes=config.max_upload_bytes)
        del payload  # upload disposed; only derived data survives

        if report.records_parsed == 0:
            raise HTTPException(
                422,
                {
                    "message": "no records found in upload",
                    "report": {
                        "records_parsed": report.records_parsed,
                        "references_parsed": report.references_parsed,
                        "references_without_year": report.references_without_year,
                        "malformed_lines": report.malformed_lines,
                    },
                },
            )

        session = Session(
            id=secrets.token_urlsafe(16),
            mode=mode,
            range=rng,
            index=build_index(records, mode=mode, rng=rng),
            report=report,
        )
        if mode == "standard":
            session.series = standard_rpys(records, rng)
        else:
            session.matrix = multi_rpys(records, rng)
        store.put(session)
        return {
            "id": session.id,
            "mode": mode,
            "records": report.records_parsed,
            "references": report.references_parsed,
        }

    @app.get("/api/sessions/{session_id}/spectrogram")
    def get_spectrogram(session_id: str):
        session = fetch(session_id)
        if session.series is None:
            raise HTTPException(409, f"session {session_id} is in {session.mode} mode")
        series = session.series
        return {
            "range": _range_json(series.range),
            "rows": [
                {"year": y, "count": series.count[y], "deviation": float(series.deviation[y])}
                for y in series.range.years()
            ],
        }

    @app.get("/api/sessions/{session_id}/heatmap")
    def get_heatmap(session_id: str):
        session = fetch(session_id)
        if session.matrix is None:
            raise HTTPException(409, f"session {session_id} is in {session.mode} mode")
        matrix = session.matrix
        return {
            "range": _range_json(matrix.range),
            "cpys": list(matrix.cpy_rows),
            "rows": [
                {
                    "cpy": cpy,
                    "rpy": rpy,
                    "count": matrix.count[(cpy, rpy)],
                    "deviation": float(matrix.deviation[(cpy, rpy)]),
                    "rank": matrix.rank[(cpy, rpy)],
                }
                for cpy in matrix.cpy_rows
                for rpy in matrix.range.years()
            ],
        }

    @app.get("/api/sessions/{session_id}/table")
    def query_table(
        session_id: str,
        q: str = "",
        sort: str = "times",
        dir: str = "desc",
        limit: int = MAX_TABLE_LIMIT,
    ):
        session = fetch(session_id)
        if dir not in ("asc", "desc"):
            raise HTTPException(422, f"dir must be 'asc' or 'desc', got {dir!r}")
        if limit < 1:
            raise HTTPException(422, "limit must be positive")
        limit = min(limit, MAX_TABLE_LIMIT)
        query = Query(tokens=tuple(q.split()), sort_key=sort, sort_direction=dir, limit=limit)
        try:
            matched = filter_sort(session.index, query)
        except UnknownSortKeyError as exc:
            raise HTTPException(422, str(exc))
        return {
            "total_matches": len(matched),
            "rows": [
                {
                    "author": r.author,
                    "rpy": r.rpy_label,
                    "source": r.source,
                    "times": r.times_referenced,
                    "cpy": r.cpy_label,
                    "link": {"kind": r.link.kind, "url": r.link.url},
                }
                for r in matched[:limit]
            ],
        }

    @app.delete("/api/sessions/{session_id}", status_code=204)
    def delete_session(session_id: str):
        store.delete(session_id)  # idempotent
        return Response(status_code=204)

    if config.static_dir:
        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="ui")

    return app
