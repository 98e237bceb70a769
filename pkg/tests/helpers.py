"""Shared builders for ledgers and random-but-valid event logs."""

from __future__ import annotations

import random

from coachd.domain import (
    CoachingSnippet,
    Direction,
    EventKind,
    EventRecord,
    Ledger,
    MicroAssessment,
    TaskType,
    Worker,
)
from coachd.service.events import ServiceState, apply_event


def oracle_distance(reference, hypothesis) -> int:
    """Independent plain Levenshtein over words (distance only, no backtrace)."""
    previous = list(range(len(hypothesis) + 1))
    for i, ref_word in enumerate(reference, start=1):
        current = [i]
        for j, hyp_word in enumerate(hypothesis, start=1):
            current.append(
                min(
                    previous[j - 1] + (ref_word != hyp_word),
                    previous[j] + 1,
                    current[-1] + 1,
                )
            )
        previous = current
    return previous[-1]


def make_ledger(workers=(), snippets=(), votes=()) -> Ledger:
    """workers: (id, tasks); snippets: (id, author, type, created_at);
    votes: (id, voter, snippet, 'up'|'down')."""
    ledger = Ledger()
    for i, (worker_id, tasks) in enumerate(workers):
        ledger.add_worker(Worker(worker_id, tasks, i))
    for i, (snippet_id, author, task_type, created_at) in enumerate(snippets):
        ledger.add_snippet(
            CoachingSnippet(snippet_id, author, task_type, f"tip {snippet_id}", created_at)
        )
    for i, (assessment_id, voter, snippet_id, direction) in enumerate(votes):
        ledger.add_assessment(
            MicroAssessment(assessment_id, voter, snippet_id, Direction(direction), 10_000 + i)
        )
    return ledger


def survey_ledger(n_workers: int, votes=()) -> Ledger:
    """n workers w0..; one Survey snippet 'snip' authored by w0; given votes."""
    workers = [(f"w{i}", 99) for i in range(n_workers)]
    ledger = make_ledger(workers, [("snip", "w0", TaskType.SURVEY, 100)])
    for i, (voter, direction) in enumerate(votes):
        ledger.add_assessment(
            MicroAssessment(f"a{i}", voter, "snip", Direction(direction), 1_000 + i)
        )
    return ledger


def survey_table_events() -> list[EventRecord]:
    """Event log with fixed, hand-planned Survey-row aggregates:
    139 snippets (per-author max 21, median 2), 406 assessments (per-voter
    max 28, median 2), per-snippet scores min -2 / max 62 / median 1.

    Authors and voters are disjoint so self-vote rules never bind. Snippet
    counts per author: 21, 15 x4, 2 x18, 1 x22. Votes per voter: 28, 14 x19,
    2 x31, 1 x50. Scores: one 62, seventy 1s, sixty-six 0s, two -2s.
    """
    author_counts = [21] + [15] * 4 + [2] * 18 + [1] * 22
    voter_counts = [28] + [14] * 19 + [2] * 31 + [1] * 50
    assert sum(author_counts) == 139 and sum(voter_counts) == 406

    state = ServiceState()
    events: list[EventRecord] = []
    at = 0

    def commit(kind: EventKind, payload: dict) -> None:
        nonlocal at
        at += 1
        event = EventRecord(state.next_event_id, kind, payload, at)
        apply_event(state, event)
        events.append(event)

    authors = [f"author{i:02d}" for i in range(len(author_counts))]
    voters = [f"voter{i:03d}" for i in range(len(voter_counts))]
    for worker_id in authors + voters:
        commit(EventKind.WORKER_REGISTERED, {"tasks_completed": 100, "worker_id": worker_id})

    snippet_authors: list[str] = []
    for author, count in zip(authors, author_counts):
        snippet_authors.extend([author] * count)
    snippet_ids = []
    for i, author in enumerate(snippet_authors):
        snippet_id = state.next_snippet_id()
        commit(
            EventKind.SNIPPET_CREATED,
            {
                "author_id": author,
                "snippet_id": snippet_id,
                "task_type": "Survey",
                "text": f"survey advice {i}",
            },
        )
        snippet_ids.append(snippet_id)

    # Vote plan per snippet: directions whose sum gives the target score.
    plan: list[tuple[str, list[str]]] = [(snippet_ids[0], ["up"] * 62)]
    for sid in snippet_ids[1:71]:  # seventy snippets scoring +1
        plan.append((sid, ["up", "up", "down"]))
    for sid in snippet_ids[71:136]:  # sixty-five snippets scoring 0 with votes
        plan.append((sid, ["up", "down"]))
    # snippet_ids[136] stays unvoted (score 0)
    for sid in snippet_ids[137:139]:  # two snippets scoring -2
        plan.append((sid, ["down", "down"]))
    assert sum(len(d) for _, d in plan) == 406

    remaining = dict(zip(voters, voter_counts))
    for sid, directions in plan:
        chosen = sorted(remaining, key=lambda v: (-remaining[v], v))[: len(directions)]
        assert all(remaining[v] > 0 for v in chosen), "voter capacity exhausted"
        for voter, direction in zip(chosen, directions):
            remaining[voter] -= 1
            commit(
                EventKind.VOTE_CAST,
                {
                    "assessment_id": state.next_assessment_id(),
                    "direction": direction,
                    "snippet_id": sid,
                    "voter_id": voter,
                },
            )
    assert all(v == 0 for v in remaining.values())
    return events


def random_event_log(
    rng: random.Random, n_events: int, shown_set_scope: str = "forever"
) -> list[EventRecord]:
    """A random sequence of events that all apply cleanly in order."""
    state = ServiceState()
    events: list[EventRecord] = []
    worker_ids: list[str] = []
    snippet_ids: list[str] = []
    at = 1_000

    def commit(kind: EventKind, payload: dict) -> None:
        nonlocal at
        at += rng.randrange(1, 5)
        event = EventRecord(state.next_event_id, kind, payload, at)
        apply_event(state, event, shown_set_scope)
        events.append(event)

    while len(events) < n_events:
        roll = rng.random()
        if roll < 0.15 or not worker_ids:
            worker_id = f"w{len(worker_ids):03d}"
            commit(
                EventKind.WORKER_REGISTERED,
                {"tasks_completed": rng.randrange(0, 20_000), "worker_id": worker_id},
            )
            worker_ids.append(worker_id)
        elif roll < 0.45 or not snippet_ids:
            snippet_id = state.next_snippet_id()
            commit(
                EventKind.SNIPPET_CREATED,
                {
                    "author_id": rng.choice(worker_ids),
                    "snippet_id": snippet_id,
                    "task_type": rng.choice(list(TaskType)).label,
                    "text": f"advice number {len(snippet_ids)}",
                },
            )
            snippet_ids.append(snippet_id)
        elif roll < 0.85:
            voter = rng.choice(worker_ids)
            candidates = [
                s
                for s in snippet_ids
                if state.ledger.snippets[s].author_id != voter
                and not state.ledger.has_voted(voter, s)
            ]
            if not candidates:
                continue
            commit(
                EventKind.VOTE_CAST,
                {
                    "assessment_id": state.next_assessment_id(),
                    "direction": rng.choice(["up", "down"]),
                    "snippet_id": rng.choice(candidates),
                    "voter_id": voter,
                },
            )
        else:
            worker_id = rng.choice(worker_ids)
            candidates = [
                s
                for s in snippet_ids
                if state.ledger.snippets[s].author_id != worker_id
                and s not in state.shown.get(worker_id, set())
            ]
            page = candidates[: rng.randrange(1, 5)]
            if not page:
                continue
            commit(
                EventKind.DISPLAY_SERVED,
                {
                    "exploration_slot": None,
                    "page_index": 0,
                    "snippet_ids": page,
                    "task_type": rng.choice(list(TaskType)).label,
                    "worker_id": worker_id,
                },
            )
    return events
