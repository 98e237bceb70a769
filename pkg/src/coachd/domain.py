"""Core domain model: task taxonomy, snippets, votes, and the shared ledger.

Everything here is a plain immutable value; the :class:`Ledger` is the only
mutable container and is owned by a single writer (the service's event
applier or a simulation loop). All text handling counts Unicode scalar
values, never bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

SNIPPET_MAX_CHARS = 100


class DomainError(Exception):
    """Base for all domain-rule violations. ``code`` is the wire-level name."""

    code = "DomainError"


class UnknownTaskTypeError(DomainError):
    code = "UnknownTaskType"


class SnippetTooLongError(DomainError):
    code = "TooLong"


class EmptySnippetError(DomainError):
    code = "Empty"


class UnknownWorkerError(DomainError):
    code = "UnknownWorker"


class UnknownSnippetError(DomainError):
    code = "UnknownSnippet"


class UnknownAssessmentError(DomainError):
    code = "UnknownAssessment"


class DuplicateIdError(DomainError):
    code = "DuplicateId"


class DuplicateVoteError(DomainError):
    code = "DuplicateVote"


class SelfVoteError(DomainError):
    code = "SelfVote"


class EmptyInputError(DomainError):
    code = "EmptyInput"


class TaskType(Enum):
    """The closed set of 8 task categories a snippet can target."""

    AUDIO_TRANSCRIPTION = "AudioTranscription"
    CATEGORIZATION = "Categorization"
    DATA_COLLECTION = "DataCollection"
    IMAGE_TRANSCRIPTION = "ImageTranscription"
    IMAGE_TAGGING = "ImageTagging"
    SURVEY = "Survey"
    WRITING = "Writing"
    OTHER = "Other"

    @classmethod
    def parse(cls, label: str) -> "TaskType":
        try:
            return cls(label)
        except ValueError:
            raise UnknownTaskTypeError(f"unknown task type: {label!r}") from None

    @property
    def label(self) -> str:
        return self.value


class Direction(Enum):
    UP = "up"
    DOWN = "down"

    @classmethod
    def parse(cls, label: str) -> "Direction":
        try:
            return cls(label)
        except ValueError:
            raise DomainError(f"direction must be 'up' or 'down', got {label!r}") from None

    @property
    def sign(self) -> int:
        return 1 if self is Direction.UP else -1


@dataclass(frozen=True)
class Worker:
    worker_id: str
    tasks_completed: int
    registered_at: int  # ms since epoch

    def __post_init__(self) -> None:
        if not self.worker_id:
            raise DomainError("worker_id must be a non-empty string")
        if self.tasks_completed < 0:
            raise DomainError("tasks_completed must be >= 0")

    def to_record(self) -> dict:
        return {
            "registered_at": self.registered_at,
            "tasks_completed": self.tasks_completed,
            "worker_id": self.worker_id,
        }


@dataclass(frozen=True)
class CoachingSnippet:
    snippet_id: str
    author_id: str
    task_type: TaskType
    text: str  # already normalized, 1..100 scalar values
    created_at: int

    def to_record(self) -> dict:
        return {
            "author_id": self.author_id,
            "created_at": self.created_at,
            "snippet_id": self.snippet_id,
            "task_type": self.task_type.label,
            "text": self.text,
        }


@dataclass(frozen=True)
class MicroAssessment:
    assessment_id: str
    voter_id: str
    snippet_id: str
    direction: Direction
    cast_at: int

    def to_record(self) -> dict:
        return {
            "assessment_id": self.assessment_id,
            "cast_at": self.cast_at,
            "direction": self.direction.value,
            "snippet_id": self.snippet_id,
            "voter_id": self.voter_id,
        }


class EventKind(Enum):
    WORKER_REGISTERED = "WorkerRegistered"
    SNIPPET_CREATED = "SnippetCreated"
    VOTE_CAST = "VoteCast"
    DISPLAY_SERVED = "DisplayServed"


@dataclass(frozen=True)
class EventRecord:
    """One append-only log entry; replaying a log in order rebuilds the state."""

    event_id: int
    kind: EventKind
    payload: Mapping
    at: int

    def to_record(self) -> dict:
        return {
            "at": self.at,
            "event_id": self.event_id,
            "kind": self.kind.value,
            "payload": dict(self.payload),
        }

    @classmethod
    def parse(cls, data: Mapping) -> "EventRecord":
        data = require_mapping(data)
        try:
            kind = EventKind(data["kind"])
            event_id = data["event_id"]
            payload = require_mapping(data["payload"])
            at = parse_timestamp_ms(data["at"])
        except KeyError as exc:
            raise DomainError(f"event record missing field {exc}") from None
        except ValueError:
            raise DomainError(f"unknown event kind {data.get('kind')!r}") from None
        if isinstance(event_id, bool) or not isinstance(event_id, int) or event_id < 1:
            raise DomainError("event_id must be a positive integer")
        return cls(event_id, kind, dict(payload), at)


def canonical_json(data) -> str:
    """Canonical wire form: sorted keys, no insignificant whitespace, UTF-8."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def normalize_snippet_text(raw: str) -> str:
    """Strip outer whitespace and collapse internal whitespace runs to one space."""
    return " ".join(raw.split())


def validate_snippet(text: str, task_type: TaskType | str) -> str:
    """Return the normalized text if it fits in 1..100 scalar values.

    Raises :class:`EmptySnippetError`, :class:`SnippetTooLongError`, or
    :class:`UnknownTaskTypeError` (when ``task_type`` is an unknown label).
    """
    if isinstance(task_type, str):
        TaskType.parse(task_type)
    normalized = normalize_snippet_text(text)
    if not normalized:
        raise EmptySnippetError("snippet text is empty after normalization")
    if len(normalized) > SNIPPET_MAX_CHARS:
        raise SnippetTooLongError(
            f"snippet is {len(normalized)} characters, limit is {SNIPPET_MAX_CHARS}"
        )
    return normalized


def duplicate_key(text: str) -> str:
    """Equality key for verbatim-duplicate detection: normalized + case-folded."""
    return normalize_snippet_text(text).casefold()


def is_verbatim_duplicate(a: str, b: str) -> bool:
    return duplicate_key(a) == duplicate_key(b)


def duplicate_rate(snippets: Iterable[CoachingSnippet]) -> float:
    """Fraction of snippets whose text repeats an earlier snippet verbatim.

    "Earlier" is by ``created_at``, ties broken by input order.
    """
    ordered = sorted(enumerate(snippets), key=lambda item: (item[1].created_at, item[0]))
    if not ordered:
        raise EmptyInputError("duplicate_rate needs at least one snippet")
    seen: set[str] = set()
    repeats = 0
    for _, snippet in ordered:
        key = duplicate_key(snippet.text)
        if key in seen:
            repeats += 1
        else:
            seen.add(key)
    return repeats / len(ordered)


class Ledger:
    """Shared read model of workers, snippets, and micro-assessments.

    Mutations enforce every cross-record invariant (registered references,
    one vote per voter per snippet, no self-votes); readers treat the ledger
    as an immutable snapshot.
    """

    def __init__(self) -> None:
        self.workers: dict[str, Worker] = {}
        self.snippets: dict[str, CoachingSnippet] = {}
        self.assessments: dict[str, MicroAssessment] = {}
        self._by_snippet: dict[str, list[str]] = {}
        self._by_voter: dict[str, list[str]] = {}
        self._by_type: dict[TaskType, list[str]] = {t: [] for t in TaskType}
        self._vote_keys: set[tuple[str, str]] = set()

    # -- writes (single writer) ------------------------------------------

    def add_worker(self, worker: Worker) -> None:
        if worker.worker_id in self.workers:
            raise DuplicateIdError(f"worker {worker.worker_id!r} already registered")
        self.workers[worker.worker_id] = worker

    def add_snippet(self, snippet: CoachingSnippet) -> None:
        if snippet.snippet_id in self.snippets:
            raise DuplicateIdError(f"snippet {snippet.snippet_id!r} already exists")
        if snippet.author_id not in self.workers:
            raise UnknownWorkerError(f"author {snippet.author_id!r} is not registered")
        if snippet.text != normalize_snippet_text(snippet.text):
            raise DomainError("snippet text must be stored in normalized form")
        validate_snippet(snippet.text, snippet.task_type)
        self.snippets[snippet.snippet_id] = snippet
        self._by_snippet[snippet.snippet_id] = []
        self._by_type[snippet.task_type].append(snippet.snippet_id)

    def add_assessment(self, assessment: MicroAssessment) -> None:
        if assessment.assessment_id in self.assessments:
            raise DuplicateIdError(f"assessment {assessment.assessment_id!r} already exists")
        if assessment.voter_id not in self.workers:
            raise UnknownWorkerError(f"voter {assessment.voter_id!r} is not registered")
        snippet = self.snippets.get(assessment.snippet_id)
        if snippet is None:
            raise UnknownSnippetError(f"snippet {assessment.snippet_id!r} does not exist")
        if assessment.voter_id == snippet.author_id:
            raise SelfVoteError("workers cannot assess their own snippets")
        key = (assessment.voter_id, assessment.snippet_id)
        if key in self._vote_keys:
            raise DuplicateVoteError(
                f"{assessment.voter_id!r} already voted on {assessment.snippet_id!r}"
            )
        self.assessments[assessment.assessment_id] = assessment
        self._by_snippet[assessment.snippet_id].append(assessment.assessment_id)
        self._by_voter.setdefault(assessment.voter_id, []).append(assessment.assessment_id)
        self._vote_keys.add(key)

    # -- reads -------------------------------------------------------------

    def require_worker(self, worker_id: str) -> Worker:
        try:
            return self.workers[worker_id]
        except KeyError:
            raise UnknownWorkerError(f"worker {worker_id!r} is not registered") from None

    def require_snippet(self, snippet_id: str) -> CoachingSnippet:
        try:
            return self.snippets[snippet_id]
        except KeyError:
            raise UnknownSnippetError(f"snippet {snippet_id!r} does not exist") from None

    def require_assessment(self, assessment_id: str) -> MicroAssessment:
        try:
            return self.assessments[assessment_id]
        except KeyError:
            raise UnknownAssessmentError(
                f"assessment {assessment_id!r} does not exist"
            ) from None

    def assessments_of(self, snippet_id: str) -> list[MicroAssessment]:
        return [self.assessments[a] for a in self._by_snippet.get(snippet_id, [])]

    def assessments_by(self, voter_id: str) -> list[MicroAssessment]:
        return [self.assessments[a] for a in self._by_voter.get(voter_id, [])]

    def snippets_of_type(self, task_type: TaskType) -> list[CoachingSnippet]:
        return [self.snippets[s] for s in self._by_type[task_type]]

    def has_voted(self, voter_id: str, snippet_id: str) -> bool:
        return (voter_id, snippet_id) in self._vote_keys

    def vote_tally(
        self, snippet_id: str, exclude: frozenset[str] | set[str] | None = None
    ) -> tuple[int, int]:
        """(upvotes, downvotes) on a snippet, optionally excluding assessment ids."""
        up = down = 0
        for aid in self._by_snippet.get(snippet_id, []):
            if exclude and aid in exclude:
                continue
            if self.assessments[aid].direction is Direction.UP:
                up += 1
            else:
                down += 1
        return up, down


def ledger_records(ledger: Ledger) -> dict:
    """All collections as canonical-ready records, in id order."""
    return {
        "assessments": [
            ledger.assessments[k].to_record() for k in sorted(ledger.assessments)
        ],
        "snippets": [ledger.snippets[k].to_record() for k in sorted(ledger.snippets)],
        "workers": [ledger.workers[k].to_record() for k in sorted(ledger.workers)],
    }


def parse_timestamp_ms(value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DomainError(f"timestamp must be integer milliseconds, got {value!r}")
    return value


def require_mapping(value) -> Mapping:
    if not isinstance(value, Mapping):
        raise DomainError(f"expected a JSON object, got {type(value).__name__}")
    return value
