"""Append-only event log, state application, replay, and state hashing.

The service state is a pure function of the event-log prefix: every event is
fully validated before any mutation, so a log on disk only ever contains
applicable events and can be truncated at any line boundary and replayed.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from ..domain import (
    CoachingSnippet,
    DomainError,
    EventKind,
    EventRecord,
    Ledger,
    MicroAssessment,
    TaskType,
    Worker,
    canonical_json,
    ledger_records,
    parse_timestamp_ms,
    validate_snippet,
)
from ..domain import Direction
from ..selector import DisplayPage, ShownSet

FIRST_EVENT_ID = 1


class StaleEventIdError(DomainError):
    code = "StaleEventId"


class InvalidPayloadError(DomainError):
    code = "InvalidPayload"


@dataclass
class ServiceState:
    ledger: Ledger = field(default_factory=Ledger)
    shown: dict[str, set[str]] = field(default_factory=dict)
    next_event_id: int = FIRST_EVENT_ID

    def shown_set(self, worker_id: str) -> ShownSet:
        return ShownSet(worker_id, self.shown.setdefault(worker_id, set()))

    def next_snippet_id(self) -> str:
        return f"s{len(self.ledger.snippets) + 1:06d}"

    def next_assessment_id(self) -> str:
        return f"a{len(self.ledger.assessments) + 1:06d}"

    @property
    def event_count(self) -> int:
        return self.next_event_id - FIRST_EVENT_ID


def _payload_str(payload, key: str) -> str:
    value = payload.get(key)
    if not isinstance(value, str) or not value:
        raise InvalidPayloadError(f"payload field {key!r} must be a non-empty string")
    return value


def _payload_int(payload, key: str, minimum: int = 0) -> int:
    value = payload.get(key)
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise InvalidPayloadError(f"payload field {key!r} must be an integer >= {minimum}")
    return value


def _check_keys(payload, allowed: set[str]) -> None:
    extra = set(payload) - allowed
    if extra:
        raise InvalidPayloadError(f"unexpected payload fields: {sorted(extra)}")


def apply_event(
    state: ServiceState, event: EventRecord, shown_set_scope: str = "forever"
) -> ServiceState:
    """Validate and fold one event into the state.

    Raises :class:`StaleEventIdError` when the event id is not the next
    expected one, and a :class:`DomainError` subclass when the payload is
    invalid; the state is untouched on any error.
    """
    if event.event_id != state.next_event_id:
        raise StaleEventIdError(
            f"expected event_id {state.next_event_id}, got {event.event_id}"
        )
    parse_timestamp_ms(event.at)
    payload = event.payload

    if event.kind is EventKind.WORKER_REGISTERED:
        _check_keys(payload, {"worker_id", "tasks_completed"})
        worker = Worker(
            worker_id=_payload_str(payload, "worker_id"),
            tasks_completed=_payload_int(payload, "tasks_completed"),
            registered_at=event.at,
        )
        state.ledger.add_worker(worker)
    elif event.kind is EventKind.SNIPPET_CREATED:
        _check_keys(payload, {"snippet_id", "author_id", "task_type", "text"})
        text = _payload_str(payload, "text")
        task_type = TaskType.parse(_payload_str(payload, "task_type"))
        if text != validate_snippet(text, task_type):
            raise InvalidPayloadError("snippet text must be logged in normalized form")
        snippet = CoachingSnippet(
            snippet_id=_payload_str(payload, "snippet_id"),
            author_id=_payload_str(payload, "author_id"),
            task_type=task_type,
            text=text,
            created_at=event.at,
        )
        state.ledger.add_snippet(snippet)
    elif event.kind is EventKind.VOTE_CAST:
        _check_keys(payload, {"assessment_id", "voter_id", "snippet_id", "direction"})
        assessment = MicroAssessment(
            assessment_id=_payload_str(payload, "assessment_id"),
            voter_id=_payload_str(payload, "voter_id"),
            snippet_id=_payload_str(payload, "snippet_id"),
            direction=Direction.parse(_payload_str(payload, "direction")),
            cast_at=event.at,
        )
        state.ledger.add_assessment(assessment)
    elif event.kind is EventKind.DISPLAY_SERVED:
        _check_keys(
            payload,
            {"worker_id", "task_type", "page_index", "snippet_ids", "exploration_slot"},
        )
        worker_id = _payload_str(payload, "worker_id")
        state.ledger.require_worker(worker_id)
        TaskType.parse(_payload_str(payload, "task_type"))
        page_index = _payload_int(payload, "page_index")
        snippet_ids = payload.get("snippet_ids")
        if not isinstance(snippet_ids, (list, tuple)):
            raise InvalidPayloadError("snippet_ids must be a list")
        if len(set(snippet_ids)) != len(snippet_ids):
            raise InvalidPayloadError("snippet_ids must not repeat")
        for snippet_id in snippet_ids:
            snippet = state.ledger.require_snippet(str(snippet_id))
            if snippet.author_id == worker_id:
                raise InvalidPayloadError("a worker is never served their own snippet")
        served = state.shown.setdefault(worker_id, set())
        if shown_set_scope == "session" and page_index == 0:
            served.clear()
        served.update(str(s) for s in snippet_ids)
    else:  # pragma: no cover - EventKind is closed
        raise InvalidPayloadError(f"unhandled event kind {event.kind}")

    state.next_event_id += 1
    return state


def display_served_payload(page: DisplayPage) -> dict:
    return {
        "exploration_slot": page.exploration_slot,
        "page_index": page.page_index,
        "snippet_ids": list(page.slots),
        "task_type": page.task_type.label,
        "worker_id": page.worker_id,
    }


def replay(events: Iterable[EventRecord], shown_set_scope: str = "forever") -> ServiceState:
    state = ServiceState()
    for event in events:
        apply_event(state, event, shown_set_scope)
    return state


def state_records(state: ServiceState) -> dict:
    records = ledger_records(state.ledger)
    records["shown_sets"] = {
        worker_id: sorted(snippets)
        for worker_id, snippets in sorted(state.shown.items())
        if snippets
    }
    records["next_event_id"] = state.next_event_id
    return records


def snapshot_hash(state: ServiceState) -> str:
    """SHA-256 of the canonical JSON serialization of all collections."""
    doc = canonical_json(state_records(state))
    return hashlib.sha256(doc.encode("utf-8")).hexdigest()


class EventLog:
    """JSON-Lines event log: one canonical JSON event per line."""

    def __init__(self, path: str | Path, fsync: bool = False) -> None:
        self.path = Path(path)
        self.fsync = fsync

    def append(self, event: EventRecord) -> None:
        line = canonical_json(event.to_record()) + "\n"
        with open(self.path, "a", encoding="utf-8") as handle:
            handle.write(line)
            handle.flush()
            if self.fsync:
                os.fsync(handle.fileno())

    def read(self) -> list[EventRecord]:
        if not self.path.exists():
            return []
        events = []
        with open(self.path, encoding="utf-8") as handle:
            for lineno, line in enumerate(handle, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    events.append(EventRecord.parse(json.loads(line)))
                except (ValueError, DomainError) as exc:
                    raise DomainError(f"{self.path}:{lineno}: bad event line: {exc}") from None
        return events


def events_to_lines(events: Sequence[EventRecord]) -> str:
    return "".join(canonical_json(e.to_record()) + "\n" for e in events)
