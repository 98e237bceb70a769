"""HTTP JSON API over the event-sourced coaching state.

All mutations funnel through a single lock: validate, apply the event, then
append it to the log, so the on-disk log only ever holds valid events.
Responses are canonical JSON (sorted keys, compact separators).
"""

from __future__ import annotations

import threading
import time
from typing import Callable

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel

from ..domain import (
    DomainError,
    EventKind,
    EventRecord,
    TaskType,
    UnknownAssessmentError,
    UnknownSnippetError,
    UnknownWorkerError,
    canonical_json,
    validate_snippet,
)
from ..selector import build_display_page, score_snippet
from ..stats.deployment import deployment_table
from .config import ServiceConfig
from .events import (
    EventLog,
    ServiceState,
    StaleEventIdError,
    apply_event,
    display_served_payload,
    replay,
    snapshot_hash,
)

_NOT_FOUND = (UnknownWorkerError, UnknownSnippetError, UnknownAssessmentError)


class CanonicalJSONResponse(Response):
    media_type = "application/json"

    def render(self, content) -> bytes:
        return canonical_json(content).encode("utf-8")


class WorkerBody(BaseModel):
    worker_id: str
    tasks_completed: int


class SnippetBody(BaseModel):
    worker_id: str
    task_type: str
    text: str


class VoteBody(BaseModel):
    worker_id: str
    snippet_id: str
    direction: str


def now_ms() -> int:
    return int(time.time() * 1000)


class CoachService:
    """Single-writer facade over the state, the log, and the selector."""

    def __init__(
        self,
        config: ServiceConfig,
        log: EventLog | None = None,
        clock: Callable[[], int] = now_ms,
    ) -> None:
        self.config = config
        self.log = log if log is not None else EventLog(config.log_path, config.fsync)
        self.clock = clock
        self.lock = threading.Lock()
        self.events: list[EventRecord] = self.log.read()
        self.state: ServiceState = replay(self.events, config.shown_set_scope)

    # -- event plumbing ----------------------------------------------------

    def _commit(self, kind: EventKind, payload: dict) -> EventRecord:
        event = EventRecord(self.state.next_event_id, kind, payload, self.clock())
        apply_event(self.state, event, self.config.shown_set_scope)
        self.log.append(event)
        self.events.append(event)
        return event

    # -- handlers ------------------------------------------------------------

    def register_worker(self, body: WorkerBody) -> dict:
        with self.lock:
            event = self._commit(
                EventKind.WORKER_REGISTERED,
                {"tasks_completed": body.tasks_completed, "worker_id": body.worker_id},
            )
            worker = self.state.ledger.workers[body.worker_id]
        return {
            "registered_at": worker.registered_at,
            "tasks_completed": worker.tasks_completed,
            "worker_id": worker.worker_id,
            "event_id": event.event_id,
        }

    def post_snippet(self, body: SnippetBody) -> dict:
        with self.lock:
            self.state.ledger.require_worker(body.worker_id)
            text = validate_snippet(body.text, body.task_type)
            snippet_id = self.state.next_snippet_id()
            event = self._commit(
                EventKind.SNIPPET_CREATED,
                {
                    "author_id": body.worker_id,
                    "snippet_id": snippet_id,
                    "task_type": TaskType.parse(body.task_type).label,
                    "text": text,
                },
            )
            snippet = self.state.ledger.snippets[snippet_id]
        record = snippet.to_record()
        record["event_id"] = event.event_id
        return record

    def post_vote(self, body: VoteBody) -> dict:
        with self.lock:
            assessment_id = self.state.next_assessment_id()
            event = self._commit(
                EventKind.VOTE_CAST,
                {
                    "assessment_id": assessment_id,
                    "direction": body.direction,
                    "snippet_id": body.snippet_id,
                    "voter_id": body.worker_id,
                },
            )
            assessment = self.state.ledger.assessments[assessment_id]
        record = assessment.to_record()
        record["event_id"] = event.event_id
        return record

    def get_display(self, worker_id: str, task_type_label: str, page_index: int) -> dict:
        task_type = TaskType.parse(task_type_label)
        with self.lock:
            ledger = self.state.ledger
            page = build_display_page(
                worker_id,
                task_type,
                page_index,
                ledger,
                self.state.shown_set(worker_id),
                self.config.reputation,
            )
            self._commit(EventKind.DISPLAY_SERVED, display_served_payload(page))
            slots = []
            for index, snippet_id in enumerate(page.slots):
                snippet = ledger.snippets[snippet_id]
                up, down = ledger.vote_tally(snippet_id)
                slots.append(
                    {
                        "author_id": snippet.author_id,
                        "exploration": index == page.exploration_slot,
                        "raw_score": up - down,
                        "snippet_id": snippet_id,
                        "text": snippet.text,
                    }
                )
        return {
            "exploration_slot": page.exploration_slot,
            "page_index": page.page_index,
            "slots": slots,
            "task_type": task_type.label,
            "worker_id": worker_id,
        }

    def get_snippet(self, snippet_id: str) -> dict:
        with self.lock:
            snippet = self.state.ledger.require_snippet(snippet_id)
            score = score_snippet(snippet_id, self.state.ledger, self.config.reputation)
        record = snippet.to_record()
        record["score"] = {
            "assessment_count": score.assessment_count,
            "credit_score": score.credit_score,
            "raw_score": score.raw_score,
        }
        return record

    def get_deployment_stats(self) -> dict:
        with self.lock:
            table = deployment_table(self.events)
        return table.to_record()

    def get_hash(self) -> dict:
        with self.lock:
            return {
                "event_count": self.state.event_count,
                "state_hash": snapshot_hash(self.state),
            }


def create_app(service: CoachService) -> FastAPI:
    app = FastAPI(title="coachd", default_response_class=CanonicalJSONResponse)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.service = service

    @app.exception_handler(DomainError)
    async def domain_error_handler(_: Request, exc: DomainError):
        if isinstance(exc, _NOT_FOUND):
            status = 404
        elif isinstance(exc, StaleEventIdError):
            status = 409
        else:
            status = 400
        return JSONResponse({"detail": str(exc), "error": exc.code}, status_code=status)

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(_: Request, exc: RequestValidationError):
        return JSONResponse(
            {"detail": str(exc.errors()), "error": "InvalidPayload"}, status_code=400
        )

    @app.post("/workers", status_code=201)
    def register_worker(body: WorkerBody):
        return service.register_worker(body)

    @app.post("/snippets", status_code=201)
    def post_snippet(body: SnippetBody):
        return service.post_snippet(body)

    @app.post("/votes", status_code=201)
    def post_vote(body: VoteBody):
        return service.post_vote(body)

    @app.get("/display")
    def get_display(
        worker_id: str, task_type: str, page: int = Query(default=0, ge=0)
    ):
        return service.get_display(worker_id, task_type, page)

    @app.get("/snippets/{snippet_id}")
    def get_snippet(snippet_id: str):
        return service.get_snippet(snippet_id)

    @app.get("/stats/deployment")
    def get_deployment_stats():
        return service.get_deployment_stats()

    @app.get("/admin/hash")
    def get_hash():
        return service.get_hash()

    return app
