"""Worker reputation and mainstream/alternative vote classification.

Reputation blends two bounded components: platform experience (a saturating
log of tasks completed) and peer agreement (how often the worker's votes
match the majority of other voters on the same snippet). Votes that deviate
strongly from the reputation-weighted consensus of the other voters are
classified as "alternative" and carry no ranking credit.

All functions recompute from the ledger snapshot they are given; there is no
caching contract, which keeps event replay deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .domain import Direction, Ledger, MicroAssessment

EXPERIENCE_LOG10_SCALE = 4.0  # saturates at 10**4 - 1 = 9999 tasks


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class ReputationConfig:
    """Knobs for reputation and vote classification.

    ``deviation_threshold`` is the minimum absolute credit-weighted consensus
    a vote must oppose to count as alternative; ``min_other_votes`` is how
    many votes from other workers a snippet needs before agreement /
    classification apply.
    """

    experience_weight: float = 0.5
    agreement_weight: float = 0.5
    deviation_threshold: float = 1.0
    min_other_votes: int = 3
    neutral_agreement: float = 0.5

    def __post_init__(self) -> None:
        if self.experience_weight < 0 or self.agreement_weight < 0:
            raise ConfigError("reputation weights must be non-negative")
        if abs(self.experience_weight + self.agreement_weight - 1.0) > 1e-9:
            raise ConfigError("reputation weights must sum to 1")
        if self.deviation_threshold < 0:
            raise ConfigError("deviation_threshold must be >= 0")
        if self.min_other_votes < 1:
            raise ConfigError("min_other_votes must be >= 1")
        if not 0.0 <= self.neutral_agreement <= 1.0:
            raise ConfigError("neutral_agreement must be in [0, 1]")


DEFAULT_CONFIG = ReputationConfig()


class AssessmentClass(Enum):
    MAINSTREAM = "mainstream"
    ALTERNATIVE = "alternative"


@dataclass(frozen=True)
class ReputationScore:
    experience_component: float
    agreement_component: float
    value: float


def experience_score(tasks_completed: int) -> float:
    """min(1, log10(1 + tasks) / 4): 0 at no history, 1.0 from 9999 tasks up."""
    if tasks_completed < 0:
        raise ValueError("tasks_completed must be >= 0")
    return min(1.0, math.log10(1.0 + tasks_completed) / EXPERIENCE_LOG10_SCALE)


def _majority_sign(up: int, down: int) -> int:
    if up > down:
        return 1
    if down > up:
        return -1
    return 0


def _agreement_counts(
    ledger: Ledger,
    worker_id: str,
    config: ReputationConfig,
    excluded_assessment_id: str | None = None,
) -> tuple[int, int]:
    """(matching votes, eligible votes) for a worker's agreement fraction.

    A vote is eligible when the snippet has at least ``min_other_votes`` votes
    from other workers and those votes are not tied. ``excluded_assessment_id``
    drops one assessment from the ledger view entirely.
    """
    matches = eligible = 0
    for vote in ledger.assessments_by(worker_id):
        if vote.assessment_id == excluded_assessment_id:
            continue
        exclude = {vote.assessment_id}
        if excluded_assessment_id is not None:
            exclude.add(excluded_assessment_id)
        up, down = ledger.vote_tally(vote.snippet_id, exclude=exclude)
        if up + down < config.min_other_votes:
            continue
        majority = _majority_sign(up, down)
        if majority == 0:
            continue  # ties drop out of the denominator
        eligible += 1
        if vote.direction.sign == majority:
            matches += 1
    return matches, eligible


def agreement_score(
    worker_id: str,
    ledger: Ledger,
    config: ReputationConfig = DEFAULT_CONFIG,
    excluded_assessment_id: str | None = None,
) -> float:
    """Fraction of the worker's eligible votes that match the others' majority.

    Returns the neutral prior when the worker has no eligible votes.
    """
    ledger.require_worker(worker_id)
    matches, eligible = _agreement_counts(ledger, worker_id, config, excluded_assessment_id)
    if eligible == 0:
        return config.neutral_agreement
    return matches / eligible


def reputation(
    worker_id: str,
    ledger: Ledger,
    config: ReputationConfig = DEFAULT_CONFIG,
    excluded_assessment_id: str | None = None,
) -> ReputationScore:
    worker = ledger.require_worker(worker_id)
    experience = experience_score(worker.tasks_completed)
    agreement = agreement_score(worker_id, ledger, config, excluded_assessment_id)
    value = config.experience_weight * experience + config.agreement_weight * agreement
    return ReputationScore(experience, agreement, value)


def consensus_of_others(
    assessment: MicroAssessment,
    ledger: Ledger,
    config: ReputationConfig = DEFAULT_CONFIG,
) -> tuple[float, int]:
    """(credit-weighted sum, count) over the other votes on the same snippet.

    Each other vote contributes its voter's signed reputation, where the
    reputation is computed on the ledger with ``assessment`` removed, so a
    vote never influences its own classification.
    """
    others = [
        a
        for a in ledger.assessments_of(assessment.snippet_id)
        if a.assessment_id != assessment.assessment_id
    ]
    weighted = 0.0
    for other in others:
        score = reputation(
            other.voter_id, ledger, config, excluded_assessment_id=assessment.assessment_id
        )
        weighted += other.direction.sign * score.value
    return weighted, len(others)


def classify_assessment(
    assessment_id: str,
    ledger: Ledger,
    config: ReputationConfig = DEFAULT_CONFIG,
) -> AssessmentClass:
    """Mainstream unless the vote opposes a strong consensus of the others.

    Alternative requires all three: at least ``min_other_votes`` other votes
    on the snippet, consensus magnitude >= ``deviation_threshold``, and the
    vote's direction opposite the consensus sign.
    """
    assessment = ledger.require_assessment(assessment_id)
    weighted, count = consensus_of_others(assessment, ledger, config)
    if count < config.min_other_votes:
        return AssessmentClass.MAINSTREAM
    if abs(weighted) < config.deviation_threshold:
        return AssessmentClass.MAINSTREAM
    consensus_sign = 1 if weighted > 0 else (-1 if weighted < 0 else 0)
    if assessment.direction.sign == consensus_sign:
        return AssessmentClass.MAINSTREAM
    return AssessmentClass.ALTERNATIVE
