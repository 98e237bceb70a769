"""coachd: peer-coaching backend with reputation-weighted snippet selection,
field-experiment statistics, and deterministic simulation harnesses."""

from .domain import (
    CoachingSnippet,
    Direction,
    EventKind,
    EventRecord,
    Ledger,
    MicroAssessment,
    TaskType,
    Worker,
    canonical_json,
    duplicate_rate,
    is_verbatim_duplicate,
    normalize_snippet_text,
    validate_snippet,
)
from .reputation import (
    AssessmentClass,
    ReputationConfig,
    ReputationScore,
    agreement_score,
    classify_assessment,
    experience_score,
    reputation,
)
from .selector import (
    DisplayPage,
    ShownSet,
    SnippetScore,
    build_display_page,
    exploration_pick,
    rank,
    score_snippet,
)

__version__ = "0.1.0"

__all__ = [
    "AssessmentClass",
    "CoachingSnippet",
    "Direction",
    "DisplayPage",
    "EventKind",
    "EventRecord",
    "Ledger",
    "MicroAssessment",
    "ReputationConfig",
    "ReputationScore",
    "ShownSet",
    "SnippetScore",
    "TaskType",
    "Worker",
    "agreement_score",
    "build_display_page",
    "canonical_json",
    "classify_assessment",
    "duplicate_rate",
    "experience_score",
    "exploration_pick",
    "is_verbatim_duplicate",
    "normalize_snippet_text",
    "rank",
    "score_snippet",
    "validate_snippet",
]
