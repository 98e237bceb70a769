"""Monte-Carlo exercise of the selector against a synthetic voter population.

Snippets carry a hidden latent quality; workers carry a discernment level
that sets how often they vote the "correct" direction. Each round one worker
requests page 0 for one task type and votes on the exploration slot. The
report grades the resulting credit ranking against the latent qualities.

Randomness comes from numpy's seeded PCG64 generator, so identical
(population, rounds, seed) inputs give bit-identical reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..domain import CoachingSnippet, Direction, Ledger, MicroAssessment, TaskType, Worker
from ..reputation import DEFAULT_CONFIG, ReputationConfig
from ..selector import ShownSet, build_display_page, rank
from .engine import VectorScorer

COVERAGE_KS = (1, 2, 3)


class ConfigError(Exception):
    pass


class MismatchedElementsError(Exception):
    pass


@dataclass(frozen=True)
class SimWorkerProfile:
    worker_id: str
    tasks_completed: int
    discernment: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.discernment <= 1.0:
            raise ConfigError(f"discernment must be in [0, 1], got {self.discernment}")
        if self.tasks_completed < 0:
            raise ConfigError("tasks_completed must be >= 0")


@dataclass(frozen=True)
class SimSnippetProfile:
    snippet_id: str
    task_type: TaskType
    quality: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.quality <= 1.0:
            raise ConfigError(f"quality must be in [0, 1], got {self.quality}")


@dataclass(frozen=True)
class RankingQualityReport:
    precision_at_4: float
    kendall_tau: float
    coverage: dict[int, float]
    votes_cast: int
    rounds: int

    def to_record(self) -> dict:
        return {
            "coverage": {str(k): v for k, v in sorted(self.coverage.items())},
            "kendall_tau": self.kendall_tau,
            "precision_at_4": self.precision_at_4,
            "rounds": self.rounds,
            "votes_cast": self.votes_cast,
        }


def _worker_profiles_from(data) -> list[SimWorkerProfile]:
    if isinstance(data, dict):
        count = int(data.get("count", 0))
        if count < 1:
            raise ConfigError("workers.count must be >= 1")
        return [
            SimWorkerProfile(
                f"w{i:04d}",
                int(data.get("tasks_completed", 100)),
                float(data.get("discernment", 0.8)),
            )
            for i in range(count)
        ]
    if isinstance(data, list):
        return [
            SimWorkerProfile(w["worker_id"], int(w["tasks_completed"]), float(w["discernment"]))
            for w in data
        ]
    raise ConfigError("workers must be a list of profiles or a {count, ...} group")


def _snippet_profiles_from(data) -> list[SimSnippetProfile]:
    if not isinstance(data, list):
        raise ConfigError("snippets must be a list")
    profiles: list[SimSnippetProfile] = []
    for entry in data:
        if "count" in entry:
            task_type = TaskType.parse(entry.get("task_type", "Survey"))
            for _ in range(int(entry["count"])):
                profiles.append(
                    SimSnippetProfile(
                        f"s{len(profiles):04d}", task_type, float(entry["quality"])
                    )
                )
        else:
            profiles.append(
                SimSnippetProfile(
                    entry["snippet_id"],
                    TaskType.parse(entry["task_type"]),
                    float(entry["quality"]),
                )
            )
    return profiles


def sim_inputs_from_dict(
    data: dict,
) -> tuple[list[SimWorkerProfile], list[SimSnippetProfile], int, int, ReputationConfig]:
    """Decode a voting-sim config document into run_voting_sim arguments."""
    try:
        workers = _worker_profiles_from(data["workers"])
        snippets = _snippet_profiles_from(data["snippets"])
    except KeyError as exc:
        raise ConfigError(f"sim config missing field {exc}") from None
    rounds = int(data.get("rounds", 1000))
    seed = int(data.get("seed", 0))
    rep = data.get("reputation", {})
    if not isinstance(rep, dict):
        raise ConfigError("reputation must be an object")
    try:
        config = ReputationConfig(**rep)
    except TypeError as exc:
        raise ConfigError(f"bad reputation config: {exc}") from None
    return workers, snippets, rounds, seed, config


def vote_model(discernment: float, quality: float, rng: np.random.Generator) -> Direction:
    """Vote the correct direction (up iff quality >= 0.5) with probability
    0.5 + 0.5 * discernment, otherwise the flipped one."""
    if not 0.0 <= discernment <= 1.0:
        raise ValueError("discernment must be in [0, 1]")
    if not 0.0 <= quality <= 1.0:
        raise ValueError("quality must be in [0, 1]")
    correct = Direction.UP if quality >= 0.5 else Direction.DOWN
    if rng.random() < 0.5 + 0.5 * discernment:
        return correct
    return Direction.DOWN if correct is Direction.UP else Direction.UP


def kendall_tau(order_a: Sequence[str], order_b: Sequence[str]) -> float:
    """(concordant - discordant) / (n choose 2) between two total orders."""
    if sorted(order_a) != sorted(order_b):
        raise MismatchedElementsError("orders must rank the same elements")
    if len(set(order_a)) != len(order_a):
        raise MismatchedElementsError("orders must not repeat elements")
    n = len(order_a)
    if n < 2:
        return 1.0
    position = {element: i for i, element in enumerate(order_b)}
    concordant = discordant = 0
    for i in range(n):
        for j in range(i + 1, n):
            if position[order_a[i]] < position[order_a[j]]:
                concordant += 1
            else:
                discordant += 1
    return (concordant - discordant) / (n * (n - 1) / 2)


def run_voting_sim(
    workers: Sequence[SimWorkerProfile],
    snippets: Sequence[SimSnippetProfile],
    rounds: int,
    seed: int,
    config: ReputationConfig = DEFAULT_CONFIG,
) -> RankingQualityReport:
    if not workers:
        raise ConfigError("need at least 1 worker")
    if len(snippets) < 4:
        raise ConfigError("need at least 4 snippets")
    if rounds < 0:
        raise ConfigError("rounds must be >= 0")
    if len({w.worker_id for w in workers}) != len(workers):
        raise ConfigError("worker ids must be unique")
    if len({s.snippet_id for s in snippets}) != len(snippets):
        raise ConfigError("snippet ids must be unique")

    ledger = Ledger()
    scorer = VectorScorer(config)
    for at, profile in enumerate(workers):
        ledger.add_worker(Worker(profile.worker_id, profile.tasks_completed, at))
        scorer.register_worker(profile.worker_id, profile.tasks_completed)
    # Authors rotate through the worker pool so self-exclusion gets exercised.
    base = len(workers)
    quality = {}
    for i, profile in enumerate(snippets):
        author = workers[i % len(workers)].worker_id
        ledger.add_snippet(
            CoachingSnippet(profile.snippet_id, author, profile.task_type, "tip", base + i)
        )
        scorer.register_snippet(profile.snippet_id)
        quality[profile.snippet_id] = profile.quality

    task_types = sorted({s.task_type for s in snippets}, key=lambda t: t.label)
    shown = {w.worker_id: ShownSet(w.worker_id) for w in workers}
    rng = np.random.default_rng(seed)
    votes_cast = 0
    vote_at = base + len(snippets)

    for _ in range(rounds):
        worker = workers[int(rng.integers(0, len(workers)))]
        task_type = task_types[int(rng.integers(0, len(task_types)))]
        scores = scorer.compute()
        page = build_display_page(
            worker.worker_id, task_type, 0, ledger, shown[worker.worker_id],
            config, scores=scores,
        )
        shown[worker.worker_id].record(page)
        if page.exploration_slot is None:
            continue
        target = page.slots[page.exploration_slot]
        assert ledger.snippets[target].author_id != worker.worker_id
        assert not ledger.has_voted(worker.worker_id, target)
        direction = vote_model(worker.discernment, quality[target], rng)
        votes_cast += 1
        ledger.add_assessment(
            MicroAssessment(f"a{votes_cast:06d}", worker.worker_id, target, direction, vote_at)
        )
        scorer.add_vote(worker.worker_id, target, direction.sign)
        vote_at += 1

    scores = scorer.compute()
    top_hits = top_total = 0
    tau_weighted = weight_total = 0.0
    for task_type in task_types:
        ranked = rank(task_type, ledger, config, scores=scores)
        ids = [sc.snippet_id for sc in ranked]
        for sc in ranked[:4]:
            top_total += 1
            top_hits += quality[sc.snippet_id] >= 0.5
        if len(ids) >= 2:
            by_quality = sorted(
                ids, key=lambda sid: (-quality[sid], ledger.snippets[sid].created_at, sid)
            )
            weight = len(ids) * (len(ids) - 1) / 2
            tau_weighted += weight * kendall_tau(ids, by_quality)
            weight_total += weight

    counts = [scores[s.snippet_id].assessment_count for s in snippets]
    coverage = {
        k: sum(c >= k for c in counts) / len(counts) for k in COVERAGE_KS
    }
    return RankingQualityReport(
        precision_at_4=top_hits / top_total if top_total else 1.0,
        kendall_tau=tau_weighted / weight_total if weight_total else 1.0,
        coverage=coverage,
        votes_cast=votes_cast,
        rounds=rounds,
    )
