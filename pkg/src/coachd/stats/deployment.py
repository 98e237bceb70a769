"""Deployment aggregates: per task type, who coached and how votes landed.

Folds an event log into the table the deployment report presents: snippet
and assessment totals, per-worker max/median contribution counts, and the
per-snippet raw score (upvotes minus downvotes) min/max/median.
"""

from __future__ import annotations

from dataclasses import dataclass
from statistics import median
from typing import Iterable

from ..domain import Direction, EventKind, EventRecord, TaskType


@dataclass(frozen=True)
class DeploymentRow:
    snippet_total: int
    snippets_per_worker_max: int
    snippets_per_worker_median: float
    assessment_total: int
    assessments_per_worker_max: int
    assessments_per_worker_median: float
    score_min: int
    score_max: int
    score_median: float

    def to_record(self) -> dict:
        return {
            "assessment_total": self.assessment_total,
            "assessments_per_worker_max": self.assessments_per_worker_max,
            "assessments_per_worker_median": self.assessments_per_worker_median,
            "score_max": self.score_max,
            "score_median": self.score_median,
            "score_min": self.score_min,
            "snippet_total": self.snippet_total,
            "snippets_per_worker_max": self.snippets_per_worker_max,
            "snippets_per_worker_median": self.snippets_per_worker_median,
        }


_EMPTY_ROW = DeploymentRow(0, 0, 0.0, 0, 0, 0.0, 0, 0, 0.0)


@dataclass(frozen=True)
class DeploymentTable:
    rows: dict[TaskType, DeploymentRow]

    def row(self, task_type: TaskType) -> DeploymentRow:
        return self.rows[task_type]

    def to_record(self) -> dict:
        return {t.label: self.rows[t].to_record() for t in TaskType}


def deployment_table(events: Iterable[EventRecord]) -> DeploymentTable:
    """Aggregate snippet/vote events into the per-task-type deployment table."""
    snippet_type: dict[str, TaskType] = {}
    snippets_by_worker: dict[TaskType, dict[str, int]] = {t: {} for t in TaskType}
    votes_by_worker: dict[TaskType, dict[str, int]] = {t: {} for t in TaskType}
    scores: dict[TaskType, dict[str, int]] = {t: {} for t in TaskType}

    for event in events:
        if event.kind is EventKind.SNIPPET_CREATED:
            task_type = TaskType.parse(event.payload["task_type"])
            snippet_id = event.payload["snippet_id"]
            author = event.payload["author_id"]
            snippet_type[snippet_id] = task_type
            counts = snippets_by_worker[task_type]
            counts[author] = counts.get(author, 0) + 1
            scores[task_type][snippet_id] = 0
        elif event.kind is EventKind.VOTE_CAST:
            snippet_id = event.payload["snippet_id"]
            task_type = snippet_type[snippet_id]
            voter = event.payload["voter_id"]
            counts = votes_by_worker[task_type]
            counts[voter] = counts.get(voter, 0) + 1
            scores[task_type][snippet_id] += Direction.parse(event.payload["direction"]).sign

    rows: dict[TaskType, DeploymentRow] = {}
    for task_type in TaskType:
        snippet_counts = list(snippets_by_worker[task_type].values())
        vote_counts = list(votes_by_worker[task_type].values())
        snippet_scores = list(scores[task_type].values())
        if not snippet_counts and not vote_counts:
            rows[task_type] = _EMPTY_ROW
            continue
        rows[task_type] = DeploymentRow(
            snippet_total=sum(snippet_counts),
            snippets_per_worker_max=max(snippet_counts, default=0),
            snippets_per_worker_median=float(median(snippet_counts)) if snippet_counts else 0.0,
            assessment_total=sum(vote_counts),
            assessments_per_worker_max=max(vote_counts, default=0),
            assessments_per_worker_median=float(median(vote_counts)) if vote_counts else 0.0,
            score_min=min(snippet_scores, default=0),
            score_max=max(snippet_scores, default=0),
            score_median=float(median(snippet_scores)) if snippet_scores else 0.0,
        )
    return DeploymentTable(rows)


def _fmt(value: float) -> str:
    return f"{value:g}"


def format_deployment_table(table: DeploymentTable) -> str:
    """Aligned plain-text rendering, one row per task type."""
    headers = [
        "task type",
        "snippets (total/max/med)",
        "assessments (total/max/med)",
        "score (min/max/med)",
    ]
    body = []
    for task_type in TaskType:
        row = table.rows[task_type]
        body.append(
            [
                task_type.label,
                f"{row.snippet_total}/{row.snippets_per_worker_max}/{_fmt(row.snippets_per_worker_median)}",
                f"{row.assessment_total}/{row.assessments_per_worker_max}/{_fmt(row.assessments_per_worker_median)}",
                f"{row.score_min}/{row.score_max}/{_fmt(row.score_median)}",
            ]
        )
    widths = [max(len(headers[i]), *(len(r[i]) for r in body)) for i in range(len(headers))]
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)),
        "  ".join("-" * w for w in widths),
    ]
    for r in body:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(r)))
    return "\n".join(lines)
