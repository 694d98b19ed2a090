"""HTTP session service: each session is one engine running in its own
thread, suspended at ask-points when the problem declares an interactive
oracle. Clients poll for the pending query and post yes/no answers.

    POST /sessions                  create a session from a problem JSON
    GET  /sessions/{id}             status, bounds, learned network, trace
    GET  /sessions/{id}/query       pending query or 204
    POST /sessions/{id}/answer      {"query_id": n, "answer": "yes"|"no"}
    GET  /sessions/{id}/log         the JSONL event stream so far
"""

from __future__ import annotations

import json
import threading
import uuid
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.responses import PlainTextResponse
from fastapi.staticfiles import StaticFiles

from ..engine import SessionState, run
from ..model import Assignment
from ..oracle import InteractiveOracle, NoPendingQuestion
from .events import EventRecorder
from .problems import ProblemFormatError, ProblemSpec, make_oracle


class LiveSession(EventRecorder):
    """One running engine plus the view the HTTP layer reads.

    Extends the event recorder so callbacks arrive in engine order; every
    callback updates a consistent snapshot under the session lock.
    """

    def __init__(self, session_id: str, spec: ProblemSpec):
        super().__init__(problem=spec.to_dict())
        self.id = session_id
        self.spec = spec
        self.lock = threading.RLock()
        self.oracle = (
            InteractiveOracle() if spec.oracle.kind == "interactive" else make_oracle(spec)
        )
        self.pending: dict | None = None
        self.view: dict = {"status": "starting"}
        self.thread = threading.Thread(target=self._drive, daemon=True)

    def start(self) -> None:
        self.thread.start()

    def _drive(self) -> None:
        try:
            run(self.spec.config(), self.oracle, self)
        except Exception as err:  # noqa: BLE001 - surfaced through the view
            with self.lock:
                self.view = {"status": "failed", "error": str(err)}

    # --- engine callbacks (engine thread) ---

    def _refresh(self, state: SessionState) -> None:
        self.view = {
            "status": state.status.value,
            "reason": state.termination_reason,
            "variables": list(self.spec.variables),
            "epsilon": self.spec.epsilon,
            "lb": state.lb,
            "ub": state.ub,
            "gap": None if state.lb is None or state.ub is None else state.ub - state.lb,
            "iteration": state.iteration,
            "learned_constraints": [str(c) for c in state.acq.learned],
            "basis_size": len(state.acq.basis),
            "queries_asked": len(state.queries),
            "queries_by_kind": dict(state.queries_by_kind),
            "lower_witness": dict(state.e_l.items()) if state.e_l is not None else None,
            "upper_witness": dict(state.e_u.items()) if state.e_u is not None else None,
            "trace": [
                {
                    "iteration": p.iteration,
                    "lb": p.lb,
                    "ub": p.ub,
                    "queries": p.queries,
                    "elapsed_seconds": p.elapsed_seconds,
                }
                for p in state.trace
            ],
        }

    def on_start(self, state):
        with self.lock:
            super().on_start(state)
            self._refresh(state)

    def on_query(self, qid, kind, e: Assignment, partial):
        with self.lock:
            super().on_query(qid, kind, e, partial)
            if isinstance(self.oracle, InteractiveOracle):
                self.pending = {
                    "query_id": qid,
                    "kind": kind,
                    "bindings": dict(e.items()),
                    "partial": partial,
                }

    def on_answer(self, qid, answer):
        with self.lock:
            super().on_answer(qid, answer)
            self.pending = None

    def on_reduced(self, e, removed):
        with self.lock:
            super().on_reduced(e, removed)
            if self._state is not None:
                self._refresh(self._state)

    def on_learned(self, constraint, dropped):
        with self.lock:
            super().on_learned(constraint, dropped)
            if self._state is not None:
                self._refresh(self._state)

    def on_bounds(self, point):
        with self.lock:
            super().on_bounds(point)
            if self._state is not None:
                self._refresh(self._state)

    def on_end(self, state):
        with self.lock:
            super().on_end(state)
            self._refresh(state)

    # --- HTTP-side accessors ---

    def snapshot(self) -> dict:
        with self.lock:
            return json.loads(json.dumps(self.view))

    def pending_query(self) -> dict | None:
        with self.lock:
            if self.pending is not None and self.oracle.waiting:
                return dict(self.pending)
            return None

    def answer(self, query_id: int, yes: bool) -> None:
        with self.lock:
            if self.pending is None or self.pending["query_id"] != query_id:
                raise NoPendingQuestion(f"query {query_id} is not pending")
            self.oracle.deliver(yes)

    def log_text(self) -> str:
        with self.lock:
            return "".join(json.dumps(e) + "\n" for e in self.events)


def create_app(ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="learnopt session service")
    sessions: dict[str, LiveSession] = {}
    registry_lock = threading.Lock()

    def lookup(session_id: str) -> LiveSession:
        with registry_lock:
            session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return session

    @app.post("/sessions")
    async def create_session(request: Request):
        try:
            payload = await request.json()
        except json.JSONDecodeError:
            raise HTTPException(status_code=422, detail="body is not valid JSON") from None
        try:
            spec = ProblemSpec.from_dict(payload)
        except (ProblemFormatError, ValueError) as err:
            raise HTTPException(status_code=422, detail=str(err)) from None
        session_id = uuid.uuid4().hex[:12]
        session = LiveSession(session_id, spec)
        with registry_lock:
            sessions[session_id] = session
        session.start()
        return {"session_id": session_id}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return lookup(session_id).snapshot()

    @app.get("/sessions/{session_id}/query")
    def get_query(session_id: str):
        pending = lookup(session_id).pending_query()
        if pending is None:
            return Response(status_code=204)
        return pending

    @app.post("/sessions/{session_id}/answer")
    def post_answer(session_id: str, body: dict):
        session = lookup(session_id)
        if "query_id" not in body or body.get("answer") not in ("yes", "no"):
            raise HTTPException(status_code=422, detail="need query_id and answer yes|no")
        try:
            session.answer(body["query_id"], body["answer"] == "yes")
        except NoPendingQuestion as err:
            raise HTTPException(status_code=409, detail=str(err)) from None
        return {"ok": True}

    @app.get("/sessions/{session_id}/log")
    def get_log(session_id: str):
        return PlainTextResponse(
            lookup(session_id).log_text(), media_type="application/x-ndjson"
        )

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
