"""Snippet scoring, per-task ranking, and 4-slot display page construction.

Ranking is driven by the credit score: the signed sum of voter reputations
over mainstream assessments only. The raw score (upvotes minus downvotes) is
what deployment reporting shows. Display pages hold three ranked slots plus
one exploration slot reserved for the least-assessed snippet the worker has
not seen, which guarantees new snippets get evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .domain import Ledger, TaskType, UnknownWorkerError
from .reputation import (
    DEFAULT_CONFIG,
    AssessmentClass,
    ReputationConfig,
    classify_assessment,
    reputation,
)

PAGE_RANKED_SLOTS = 3
PAGE_SIZE = 4


@dataclass(frozen=True)
class SnippetScore:
    snippet_id: str
    raw_score: int
    credit_score: float
    assessment_count: int


@dataclass(frozen=True)
class DisplayPage:
    worker_id: str
    task_type: TaskType
    page_index: int
    slots: tuple[str, ...]
    exploration_slot: int | None

    def to_record(self) -> dict:
        return {
            "exploration_slot": self.exploration_slot,
            "page_index": self.page_index,
            "slots": list(self.slots),
            "task_type": self.task_type.label,
            "worker_id": self.worker_id,
        }


@dataclass
class ShownSet:
    """Per-worker record of snippets already served, enforcing no-redundancy."""

    worker_id: str
    snippet_ids: set[str] = field(default_factory=set)

    def record(self, page: DisplayPage) -> None:
        self.snippet_ids.update(page.slots)


def score_snippet(
    snippet_id: str,
    ledger: Ledger,
    config: ReputationConfig = DEFAULT_CONFIG,
    credit_reputations: Mapping[str, float] | None = None,
) -> SnippetScore:
    """Raw and credit score for one snippet.

    Alternative assessments count toward ``raw_score`` and
    ``assessment_count`` but contribute nothing to ``credit_score``.
    ``credit_reputations`` overrides the per-voter credit weights only;
    classification always derives from the ledger itself.
    """
    ledger.require_snippet(snippet_id)
    raw = 0
    credit = 0.0
    count = 0
    for assessment in ledger.assessments_of(snippet_id):
        count += 1
        raw += assessment.direction.sign
        if classify_assessment(assessment.assessment_id, ledger, config) is not AssessmentClass.MAINSTREAM:
            continue
        if credit_reputations is not None:
            weight = credit_reputations[assessment.voter_id]
        else:
            weight = reputation(assessment.voter_id, ledger, config).value
        credit += assessment.direction.sign * weight
    return SnippetScore(snippet_id, raw, credit, count)


def rank(
    task_type: TaskType,
    ledger: Ledger,
    config: ReputationConfig = DEFAULT_CONFIG,
    credit_reputations: Mapping[str, float] | None = None,
    scores: Mapping[str, SnippetScore] | None = None,
) -> list[SnippetScore]:
    """All snippets of a task type, best credit first.

    Ties break toward the older snippet, then lexicographic snippet id.
    ``scores`` accepts precomputed per-snippet scores (they must equal what
    :func:`score_snippet` would produce for the same ledger).
    """
    snippets = ledger.snippets_of_type(task_type)
    if scores is None:
        scored = [
            score_snippet(s.snippet_id, ledger, config, credit_reputations) for s in snippets
        ]
    else:
        scored = [scores[s.snippet_id] for s in snippets]
    created = {s.snippet_id: s.created_at for s in snippets}
    scored.sort(key=lambda sc: (-sc.credit_score, created[sc.snippet_id], sc.snippet_id))
    return scored


def _least_assessed(
    candidate_ids: Sequence[str],
    counts: Mapping[str, int],
    ledger: Ledger,
) -> str | None:
    best: str | None = None
    best_key: tuple[int, int, str] | None = None
    for snippet_id in candidate_ids:
        key = (counts[snippet_id], ledger.snippets[snippet_id].created_at, snippet_id)
        if best_key is None or key < best_key:
            best, best_key = snippet_id, key
    return best


def exploration_pick(
    task_type: TaskType,
    shown: ShownSet,
    ledger: Ledger,
    scores: Mapping[str, SnippetScore] | None = None,
) -> str | None:
    """The least-assessed snippet of the type the worker has not seen or written.

    Ties break toward the older snippet, then snippet id; None when every
    candidate is exhausted.
    """
    candidates = [
        s.snippet_id
        for s in ledger.snippets_of_type(task_type)
        if s.snippet_id not in shown.snippet_ids and s.author_id != shown.worker_id
    ]
    if not candidates:
        return None
    if scores is not None:
        counts = {sid: scores[sid].assessment_count for sid in candidates}
    else:
        counts = {sid: len(ledger.assessments_of(sid)) for sid in candidates}
    return _least_assessed(candidates, counts, ledger)


def build_display_page(
    worker_id: str,
    task_type: TaskType,
    page_index: int,
    ledger: Ledger,
    shown: ShownSet,
    config: ReputationConfig = DEFAULT_CONFIG,
    scores: Mapping[str, SnippetScore] | None = None,
) -> DisplayPage:
    """Page ``page_index`` of the ranked, unseen snippets for one worker.

    Slots 1-3 come from the filtered ranking; slot 4 is the exploration pick
    computed against everything already on the page. The caller records the
    served page on ``shown`` (the service does this by applying a
    DisplayServed event).
    """
    if worker_id not in ledger.workers:
        raise UnknownWorkerError(f"worker {worker_id!r} is not registered")
    if shown.worker_id != worker_id:
        raise ValueError("shown set belongs to a different worker")
    if page_index < 0:
        raise ValueError("page_index must be >= 0")

    ranked = rank(task_type, ledger, config, scores=scores)
    eligible = [
        sc.snippet_id
        for sc in ranked
        if sc.snippet_id not in shown.snippet_ids
        and ledger.snippets[sc.snippet_id].author_id != worker_id
    ]
    start = PAGE_RANKED_SLOTS * page_index
    slots = list(eligible[start : start + PAGE_RANKED_SLOTS])

    counts = {sc.snippet_id: sc.assessment_count for sc in ranked}
    exploration_slot = None
    remaining = [sid for sid in eligible if sid not in slots]
    pick = _least_assessed(remaining, counts, ledger)
    if pick is not None:
        exploration_slot = len(slots)
        slots.append(pick)
    return DisplayPage(worker_id, task_type, page_index, tuple(slots), exploration_slot)
