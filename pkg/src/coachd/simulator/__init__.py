"""Deterministic Monte-Carlo harnesses for the selector and field experiment."""

from .engine import VectorScorer
from .experiment import (
    ConditionSpec,
    DrawnCondition,
    ExperimentConfig,
    ExperimentReport,
    draw_experiment_data,
    drawn_to_conditions,
    reference_conditions,
    reference_experiment_config,
    run_field_experiment_replica,
)
from .voting import (
    ConfigError,
    MismatchedElementsError,
    RankingQualityReport,
    SimSnippetProfile,
    SimWorkerProfile,
    kendall_tau,
    run_voting_sim,
    vote_model,
)

__all__ = [
    "ConditionSpec",
    "ConfigError",
    "DrawnCondition",
    "ExperimentConfig",
    "ExperimentReport",
    "MismatchedElementsError",
    "RankingQualityReport",
    "SimSnippetProfile",
    "SimWorkerProfile",
    "VectorScorer",
    "draw_experiment_data",
    "drawn_to_conditions",
    "kendall_tau",
    "reference_conditions",
    "reference_experiment_config",
    "run_field_experiment_replica",
    "run_voting_sim",
    "vote_model",
]
