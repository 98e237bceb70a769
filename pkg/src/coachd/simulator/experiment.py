"""Replica of the three-condition field experiment at configurable parameters.

Per-worker (accuracy, completion time) pairs are drawn from per-condition
normal distributions (completion clamped to >= 1 s, accuracy to [0, 1] --
plain clamping rather than truncated normals, recorded in the report
metadata). Retention drops a random subset of each condition down to its
configured completed count; the retained workers feed the MANOVA / ANOVA /
Tukey pipeline and the retention counts feed the chi-square test.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from ..stats.analysis import (
    ConditionSummary,
    ExperimentAnalysis,
    analyze_conditions,
    format_analysis,
)
from ..stats.inference import GroupSample
from .voting import ConfigError

RNG_NOTE = "numpy default_rng (PCG64), normal draws clamped, not truncated"


@dataclass(frozen=True)
class ConditionSpec:
    label: str
    completion_mean: float
    completion_sd: float
    accuracy_mean: float
    accuracy_sd: float
    group_size: int = 30
    completed: int = 30

    def __post_init__(self) -> None:
        if self.completion_sd <= 0 or self.accuracy_sd <= 0:
            raise ConfigError(f"{self.label}: standard deviations must be > 0")
        if self.group_size < 2:
            raise ConfigError(f"{self.label}: group_size must be >= 2")
        if not 2 <= self.completed <= self.group_size:
            raise ConfigError(
                f"{self.label}: completed must be in [2, group_size], got {self.completed}"
            )


@dataclass(frozen=True)
class ExperimentConfig:
    conditions: tuple[ConditionSpec, ...]
    seed: int = 0
    alpha: float = 0.05

    def __post_init__(self) -> None:
        if len(self.conditions) < 2:
            raise ConfigError("need at least 2 conditions")
        labels = [c.label for c in self.conditions]
        if len(set(labels)) != len(labels):
            raise ConfigError("condition labels must be unique")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        try:
            conditions = tuple(ConditionSpec(**c) for c in data["conditions"])
        except KeyError:
            raise ConfigError("config must contain a 'conditions' list") from None
        except TypeError as exc:
            raise ConfigError(f"bad condition spec: {exc}") from None
        return cls(
            conditions=conditions,
            seed=int(data.get("seed", 0)),
            alpha=float(data.get("alpha", 0.05)),
        )

    @classmethod
    def from_file(cls, path: str | Path) -> "ExperimentConfig":
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
        if not isinstance(data, dict):
            raise ConfigError("experiment config must be a JSON object")
        return cls.from_dict(data)


def reference_conditions() -> tuple[ConditionSpec, ...]:
    """Reference three-condition setup; accuracy means are calibration values."""
    return (
        ConditionSpec("control", 262.79, 37.38, 0.90, 0.04, 30, 26),
        ConditionSpec("random", 284.21, 46.44, 0.92, 0.04, 30, 26),
        ConditionSpec("coach", 184.10, 12.36, 0.93, 0.04, 30, 25),
    )


def reference_experiment_config(seed: int = 0) -> ExperimentConfig:
    return ExperimentConfig(reference_conditions(), seed=seed)


@dataclass(frozen=True)
class DrawnCondition:
    spec: ConditionSpec
    completion: tuple[float, ...]  # retained workers only
    accuracy: tuple[float, ...]
    clamped: int


@dataclass(frozen=True)
class ExperimentReport:
    config: ExperimentConfig
    analysis: ExperimentAnalysis
    metadata: dict

    def to_record(self) -> dict:
        return {
            "analysis": self.analysis.to_record(),
            "metadata": self.metadata,
            "seed": self.config.seed,
        }

    def format_text(self) -> str:
        lines = [format_analysis(self.analysis), ""]
        lines.append(f"seed = {self.config.seed}; {self.metadata['rng']}")
        lines.append(f"values clamped during draw: {self.metadata['clamped_draws']}")
        return "\n".join(lines)


def draw_experiment_data(config: ExperimentConfig) -> list[DrawnCondition]:
    """Deterministic per-seed draws; conditions consume the stream in order."""
    rng = np.random.default_rng(config.seed)
    drawn = []
    for spec in config.conditions:
        completion = rng.normal(spec.completion_mean, spec.completion_sd, spec.group_size)
        accuracy = rng.normal(spec.accuracy_mean, spec.accuracy_sd, spec.group_size)
        retained = np.sort(rng.permutation(spec.group_size)[: spec.completed])
        completion = completion[retained]
        accuracy = accuracy[retained]
        clamped = int(np.sum(completion < 1.0) + np.sum(accuracy < 0.0) + np.sum(accuracy > 1.0))
        completion = np.maximum(completion, 1.0)
        accuracy = np.clip(accuracy, 0.0, 1.0)
        drawn.append(
            DrawnCondition(spec, tuple(completion.tolist()), tuple(accuracy.tolist()), clamped)
        )
    return drawn


def drawn_to_conditions(drawn: Sequence[DrawnCondition]) -> list[ConditionSummary]:
    return [
        ConditionSummary(
            label=d.spec.label,
            started=d.spec.group_size,
            completed=d.spec.completed,
            completion=GroupSample(d.spec.label, d.completion),
            accuracy=GroupSample(d.spec.label, d.accuracy),
        )
        for d in drawn
    ]


def run_field_experiment_replica(config: ExperimentConfig) -> ExperimentReport:
    drawn = draw_experiment_data(config)
    analysis = analyze_conditions(drawn_to_conditions(drawn), config.alpha)
    metadata = {
        "clamped_draws": sum(d.clamped for d in drawn),
        "rng": RNG_NOTE,
        "seed": config.seed,
    }
    return ExperimentReport(config, analysis, metadata)
