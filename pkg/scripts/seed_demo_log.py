#!/usr/bin/env python3
"""Write a small demo event log so `coachd serve` has data to show.

    python scripts/seed_demo_log.py demo-events.jsonl
    coachd serve --log-path demo-events.jsonl

Registers a dozen workers, a handful of snippets per task type, and enough
votes that display pages carry ranked and exploration slots. Worker ids
worker01..worker12 can be entered in the web panel.
"""

import argparse
import itertools
import random

from coachd.domain import EventKind, EventRecord, TaskType
from coachd.service.events import EventLog, ServiceState, apply_event

TIPS = {
    TaskType.SURVEY: [
        "read every question before answering",
        "check for attention checks hidden mid page",
        "keep a list of requesters you like working with",
        "answer honestly, consistency checks are common",
        "preview the full survey length before accepting",
    ],
    TaskType.AUDIO_TRANSCRIPTION: [
        "use headphones to catch quiet words",
        "slow playback to 0.75x for dense speech",
        "learn the hotkeys of your transcription tool",
        "punctuate as you go, not at the end",
    ],
    TaskType.IMAGE_TAGGING: [
        "zoom in before tagging small objects",
        "tag the obvious items first, then sweep again",
        "keep the label guidelines open in a second tab",
    ],
    TaskType.WRITING: [
        "outline before you write a single sentence",
        "read the prompt twice, requesters reject off-topic work",
        "keep sentences short and concrete",
    ],
}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("log_path", nargs="?", default="demo-events.jsonl")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    state = ServiceState()
    log = EventLog(args.log_path)
    at = itertools.count(1_700_000_000_000, 1_000)

    def commit(kind, payload):
        event = EventRecord(state.next_event_id, kind, payload, next(at))
        apply_event(state, event)
        log.append(event)

    workers = [f"worker{i:02d}" for i in range(1, 13)]
    for worker in workers:
        commit(
            EventKind.WORKER_REGISTERED,
            {"tasks_completed": rng.choice([5, 80, 400, 2_500, 12_000]), "worker_id": worker},
        )

    snippet_ids = []
    for task_type, tips in TIPS.items():
        for tip in tips:
            snippet_id = state.next_snippet_id()
            commit(
                EventKind.SNIPPET_CREATED,
                {
                    "author_id": rng.choice(workers),
                    "snippet_id": snippet_id,
                    "task_type": task_type.label,
                    "text": tip,
                },
            )
            snippet_ids.append(snippet_id)

    for snippet_id in snippet_ids:
        author = state.ledger.snippets[snippet_id].author_id
        voters = [w for w in workers if w != author]
        rng.shuffle(voters)
        for voter in voters[: rng.randrange(0, 7)]:
            commit(
                EventKind.VOTE_CAST,
                {
                    "assessment_id": state.next_assessment_id(),
                    "direction": "up" if rng.random() < 0.7 else "down",
                    "snippet_id": snippet_id,
                    "voter_id": voter,
                },
            )

    print(f"wrote {state.event_count} events to {args.log_path}")
    print(f"workers: {workers[0]}..{workers[-1]}")


if __name__ == "__main__":
    main()
