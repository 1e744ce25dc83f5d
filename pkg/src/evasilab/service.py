"""Interactive game sessions and the JSON-over-HTTP service.

A session fixes a property and a role for the human: as Bob they pick the
questions and an optimal adversary answers; as Alice they answer questions
chosen by Bob's optimal strategy.  All game numbers come from the same
solver the CLI uses, so the two surfaces can never disagree.

Sessions live in memory and expire after an idle timeout; games take
minutes, so there is no persistence layer.
"""

from __future__ import annotations

import time
import uuid
from dataclasses import dataclass, field
from threading import Lock
from typing import Callable

from pydantic import BaseModel

from .graphs import all_edges, edge_index, num_edges
from .positions import (
    ANSWERS,
    VERDICT_IN,
    VERDICT_OUT,
    Position,
    build_position_table,
    child,
    labeled_verdict,
)
from .properties import BUILTIN_NAMES, Property, builtin, parse_property
from .solver import SolveReport, adversary_answer, best_move, solve

ROLE_BOB = "bob"
ROLE_ALICE = "alice"
ROLES = (ROLE_BOB, ROLE_ALICE)

STATUS_ONGOING = "ongoing"
STATUS_DECIDED_IN = "decided_in"
STATUS_DECIDED_OUT = "decided_out"
STATUS_EXHAUSTED = "exhausted"

DEFAULT_SESSION_TTL = 3600.0


class GameError(ValueError):
    """An invalid request against a session (wrong role, illegal edge, finished game)."""


def resolve_property(n: int, spec) -> Property:
    """Accept "builtin:NAME" strings or property documents (dicts)."""
    if isinstance(spec, str):
        if not spec.startswith("builtin:"):
            raise ValueError(f'property string must look like "builtin:NAME", got {spec!r}')
        name = spec[len("builtin:"):]
        if name not in BUILTIN_NAMES:
            raise ValueError(f"unknown builtin {name!r}; choose from {BUILTIN_NAMES}")
        return builtin(name, n)
    if isinstance(spec, dict):
        doc = dict(spec)
        doc.setdefault("n", n)
        if doc["n"] != n:
            raise ValueError(f'property document has n={doc["n"]} but the game has n={n}')
        return parse_property(doc)
    raise ValueError("property must be a builtin string or a JSON document")


@dataclass
class GameSession:
    """One running game; single-writer by construction."""

    id: str
    n: int
    prop: Property
    human_role: str
    report: SolveReport
    position: Position
    history: list[tuple[tuple[int, int], str]] = field(default_factory=list)
    status: str = STATUS_ONGOING
    pending_question: tuple[int, int] | None = None

    @property
    def table(self):
        return build_position_table(self.n)

    def refresh_status(self) -> None:
        verdict = labeled_verdict(self.position, self.prop, self.table)
        if verdict == VERDICT_IN:
            self.status = STATUS_DECIDED_IN
        elif verdict == VERDICT_OUT:
            self.status = STATUS_DECIDED_OUT
        elif self.position.is_complete:
            # defensively kept: an undecided fully answered board cannot occur
            self.status = STATUS_EXHAUSTED
        else:
            self.status = STATUS_ONGOING


def create_game(n: int, property_spec, human_role: str) -> GameSession:
    """Fresh session at the all-unknown position; engine-Bob asks first if the human is Alice."""
    prop = resolve_property(n, property_spec)
    if human_role not in ROLES:
        raise ValueError(f"human_role must be one of {ROLES}, got {human_role!r}")
    tbl = build_position_table(n)
    session = GameSession(
        id=uuid.uuid4().hex,
        n=n,
        prop=prop,
        human_role=human_role,
        report=solve(prop, tbl),
        position=Position.initial(n),
    )
    session.refresh_status()
    if session.status == STATUS_ONGOING and human_role == ROLE_ALICE:
        session.pending_question = best_move(session.position, prop, tbl, session.report)
    return session


def human_ask(session: GameSession, edge: tuple[int, int]) -> GameSession:
    """Human-Bob asks an edge; the adversary answers and the session advances."""
    if session.human_role != ROLE_BOB:
        raise GameError("this session has the engine asking the questions")
    if session.status != STATUS_ONGOING:
        raise GameError(f"game is over ({session.status})")
    u, v = edge
    e = edge_index(min(u, v), max(u, v), session.n)
    if session.position.asked >> e & 1:
        raise GameError(f"edge {u}-{v} was already asked")
    tbl = session.table
    answer = adversary_answer(session.position, (u, v), session.prop, tbl, session.report)
    session.position = child(session.position, e, answer)
    session.history.append(((min(u, v), max(u, v)), answer))
    session.refresh_status()
    return session


def human_answer(session: GameSession, answer: str) -> GameSession:
    """Human-Alice answers the pending question; engine-Bob asks the next one."""
    if session.human_role != ROLE_ALICE:
        raise GameError("this session has the human asking the questions")
    if session.status != STATUS_ONGOING:
        raise GameError(f"game is over ({session.status})")
    if session.pending_question is None:
        raise GameError("there is no pending question to answer")
    if answer not in ANSWERS:
        raise GameError(f"answer must be one of {ANSWERS}, got {answer!r}")
    u, v = session.pending_question
    e = edge_index(u, v, session.n)
    session.position = child(session.position, e, answer)
    session.history.append(((u, v), answer))
    session.pending_question = None
    session.refresh_status()
    if session.status == STATUS_ONGOING:
        session.pending_question = best_move(session.position, session.prop, session.table, session.report)
    return session


def hint(session: GameSession) -> dict:
    """Best question at the current position plus the worst-case questions remaining."""
    if session.status != STATUS_ONGOING:
        raise GameError(f"game is over ({session.status})")
    if session.human_role != ROLE_BOB:
        raise GameError("hints are for the asking side")
    tbl = session.table
    pos_id, _ = tbl.lookup(session.position)
    edge = best_move(session.position, session.prop, tbl, session.report)
    return {"edge": list(edge), "worst_case_remaining": session.report.d[pos_id]}


def get_state(session: GameSession) -> dict:
    """JSON view of a session; every number the UI shows comes from here."""
    tbl = session.table
    p = session.position
    if p.is_complete:
        reach = 1 << tbl.class_table.class_of(p.present)
    else:
        pos_id, _ = tbl.lookup(p)
        reach = tbl.reachable[pos_id]
    in_count = (reach & session.prop.members).bit_count()
    out_count = reach.bit_count() - in_count
    return {
        "id": session.id,
        "n": session.n,
        "status": session.status,
        "human_role": session.human_role,
        "total_questions": num_edges(session.n),
        "questions_used": len(session.history),
        "history": [{"edge": list(edge), "answer": answer} for edge, answer in session.history],
        "edges": [
            {"edge": [u, v], "state": p.edge_state(i)}
            for i, (u, v) in enumerate(all_edges(session.n))
        ],
        "reachable_in": in_count,
        "reachable_out": out_count,
        "pending_question": list(session.pending_question) if session.pending_question else None,
    }


class CreateGameBody(BaseModel):
    n: int
    property: str | dict
    human_role: str


class AskBody(BaseModel):
    edge: tuple[int, int]


class AnswerBody(BaseModel):
    answer: str


class SessionStore:
    """In-memory session registry with idle expiry."""

    def __init__(self, ttl: float = DEFAULT_SESSION_TTL, time_fn: Callable[[], float] = time.monotonic):
        self._ttl = ttl
        self._time = time_fn
        self._lock = Lock()
        self._sessions: dict[str, tuple[GameSession, float]] = {}

    def _purge(self) -> None:
        now = self._time()
        stale = [sid for sid, (_, touched) in self._sessions.items() if now - touched > self._ttl]
        for sid in stale:
            del self._sessions[sid]

    def put(self, session: GameSession) -> None:
        with self._lock:
            self._purge()
            self._sessions[session.id] = (session, self._time())

    def get(self, session_id: str) -> GameSession:
        with self._lock:
            self._purge()
            if session_id not in self._sessions:
                raise KeyError(session_id)
            session, _ = self._sessions[session_id]
            self._sessions[session_id] = (session, self._time())
            return session

    def __len__(self) -> int:
        with self._lock:
            self._purge()
            return len(self._sessions)


def build_app(store: SessionStore | None = None, ui_dir: str | None = None):
    """FastAPI app exposing the game endpoints (and optionally the browser UI)."""
    from fastapi import FastAPI, HTTPException

    sessions = store if store is not None else SessionStore()
    app = FastAPI(title="evasilab game service")

    def fetch(session_id: str) -> GameSession:
        try:
            return sessions.get(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")

    @app.post("/api/game")
    def api_create(body: CreateGameBody) -> dict:
        try:
            session = create_game(body.n, body.property, body.human_role)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        sessions.put(session)
        return get_state(session)

    @app.post("/api/game/{session_id}/ask")
    def api_ask(session_id: str, body: AskBody) -> dict:
        session = fetch(session_id)
        try:
            human_ask(session, body.edge)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return get_state(session)

    @app.post("/api/game/{session_id}/answer")
    def api_answer(session_id: str, body: AnswerBody) -> dict:
        session = fetch(session_id)
        try:
            human_answer(session, body.answer)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return get_state(session)

    @app.get("/api/game/{session_id}")
    def api_state(session_id: str) -> dict:
        return get_state(fetch(session_id))

    @app.get("/api/game/{session_id}/hint")
    def api_hint(session_id: str) -> dict:
        session = fetch(session_id)
        try:
            return hint(session)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
