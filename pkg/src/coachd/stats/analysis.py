"""Three-condition experiment analysis: MANOVA, ANOVAs, Tukey, retention.

Consumes either per-task CSV rows (``condition,task_index,worker_id,
completion_seconds,accuracy``) or pre-aggregated per-worker observations.
Workers count as completed when they submitted every task index present in
the data; completed workers contribute one (accuracy, completion) observation
each, averaged over their tasks.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .inference import (
    AnovaResult,
    BivariateGroupSample,
    ChiSquareResult,
    GroupSample,
    ManovaResult,
    TukeyResult,
    chi_square_contingency,
    one_way_anova,
    one_way_manova,
    tukey_hsd,
)

CSV_HEADER = ["condition", "task_index", "worker_id", "completion_seconds", "accuracy"]


class CsvFormatError(Exception):
    pass


@dataclass(frozen=True)
class TaskRow:
    condition: str
    task_index: int
    worker_id: str
    completion_seconds: float
    accuracy: float


@dataclass(frozen=True)
class ConditionSummary:
    label: str
    started: int
    completed: int
    completion: GroupSample
    accuracy: GroupSample


@dataclass(frozen=True)
class ExperimentAnalysis:
    conditions: tuple[ConditionSummary, ...]
    manova: ManovaResult
    completion_anova: AnovaResult
    accuracy_anova: AnovaResult
    completion_tukey: TukeyResult
    retention: ChiSquareResult | None

    def to_record(self) -> dict:
        return {
            "accuracy_anova": _anova_record(self.accuracy_anova),
            "completion_anova": _anova_record(self.completion_anova),
            "completion_tukey": {
                "alpha": self.completion_tukey.alpha,
                "df": self.completion_tukey.df,
                "k": self.completion_tukey.k,
                "pairs": [
                    {
                        "label_a": p.label_a,
                        "label_b": p.label_b,
                        "mean_diff": p.mean_diff,
                        "p": p.p,
                        "q_stat": p.q_stat,
                        "significant": p.significant,
                        "standard_error": p.standard_error,
                    }
                    for p in self.completion_tukey.pairs
                ],
            },
            "conditions": [
                {
                    "accuracy_mean": c.accuracy.mean,
                    "accuracy_sd": c.accuracy.sd,
                    "completed": c.completed,
                    "completion_mean": c.completion.mean,
                    "completion_sd": c.completion.sd,
                    "label": c.label,
                    "started": c.started,
                }
                for c in self.conditions
            ],
            "manova": {
                "df1": self.manova.df1,
                "df2": self.manova.df2,
                "f_approx": self.manova.f_approx,
                "p": self.manova.p,
                "wilks_lambda": self.manova.wilks_lambda,
            },
            "retention": None
            if self.retention is None
            else {
                "df": self.retention.df,
                "p": self.retention.p,
                "statistic": self.retention.statistic,
            },
        }


def _anova_record(result: AnovaResult) -> dict:
    return {"df1": result.df1, "df2": result.df2, "f_stat": result.f_stat, "p": result.p}


def load_experiment_csv(source: str | Path | io.TextIOBase) -> list[TaskRow]:
    if isinstance(source, (str, Path)):
        with open(source, newline="", encoding="utf-8") as handle:
            return _parse_rows(handle)
    return _parse_rows(source)


def _parse_rows(handle) -> list[TaskRow]:
    reader = csv.reader(handle)
    try:
        header = next(reader)
    except StopIteration:
        raise CsvFormatError("empty CSV") from None
    if [h.strip() for h in header] != CSV_HEADER:
        raise CsvFormatError(f"expected header {','.join(CSV_HEADER)}, got {','.join(header)}")
    rows = []
    for lineno, raw in enumerate(reader, start=2):
        if not raw or all(not cell.strip() for cell in raw):
            continue
        if len(raw) != len(CSV_HEADER):
            raise CsvFormatError(f"line {lineno}: expected {len(CSV_HEADER)} fields")
        try:
            rows.append(
                TaskRow(
                    condition=raw[0].strip(),
                    task_index=int(raw[1]),
                    worker_id=raw[2].strip(),
                    completion_seconds=float(raw[3]),
                    accuracy=float(raw[4]),
                )
            )
        except ValueError as exc:
            raise CsvFormatError(f"line {lineno}: {exc}") from None
    if not rows:
        raise CsvFormatError("CSV contains no data rows")
    return rows


def rows_to_conditions(rows: Sequence[TaskRow]) -> list[ConditionSummary]:
    """Collapse per-task rows into per-worker observations per condition."""
    all_tasks = {r.task_index for r in rows}
    by_condition: dict[str, dict[str, list[TaskRow]]] = {}
    order: list[str] = []
    for row in rows:
        if row.condition not in by_condition:
            by_condition[row.condition] = {}
            order.append(row.condition)
        by_condition[row.condition].setdefault(row.worker_id, []).append(row)

    summaries = []
    for label in order:
        workers = by_condition[label]
        completions = []
        accuracies = []
        completed = 0
        for tasks in workers.values():
            if {t.task_index for t in tasks} == all_tasks:
                completed += 1
                completions.append(sum(t.completion_seconds for t in tasks) / len(tasks))
                accuracies.append(sum(t.accuracy for t in tasks) / len(tasks))
        summaries.append(
            ConditionSummary(
                label=label,
                started=len(workers),
                completed=completed,
                completion=GroupSample(label, tuple(completions)),
                accuracy=GroupSample(label, tuple(accuracies)),
            )
        )
    return summaries


def analyze_conditions(
    conditions: Sequence[ConditionSummary], alpha: float = 0.05
) -> ExperimentAnalysis:
    completion_groups = [c.completion for c in conditions]
    accuracy_groups = [c.accuracy for c in conditions]
    bivariate = [
        BivariateGroupSample(
            c.label, tuple(zip(c.accuracy.values, c.completion.values))
        )
        for c in conditions
    ]

    retention: ChiSquareResult | None = None
    dropped = [c.started - c.completed for c in conditions]
    if any(d > 0 for d in dropped):
        table = [[c.completed for c in conditions], dropped]
        retention = chi_square_contingency(table)

    return ExperimentAnalysis(
        conditions=tuple(conditions),
        manova=one_way_manova(bivariate),
        completion_anova=one_way_anova(completion_groups),
        accuracy_anova=one_way_anova(accuracy_groups),
        completion_tukey=tukey_hsd(completion_groups, alpha),
        retention=retention,
    )


def analyze_rows(rows: Sequence[TaskRow], alpha: float = 0.05) -> ExperimentAnalysis:
    return analyze_conditions(rows_to_conditions(rows), alpha)


def format_p(p: float) -> str:
    if p < 0.0001:
        return "p < 0.0001"
    return f"p = {p:.4g}"


def _fmt_df(df: float) -> str:
    return f"{df:g}" if isinstance(df, float) and not df.is_integer() else f"{int(df)}"


def format_analysis(analysis: ExperimentAnalysis) -> str:
    lines = ["Condition summaries (completed workers):"]
    for c in analysis.conditions:
        lines.append(
            f"  {c.label}: n = {c.completed}/{c.started}, "
            f"completion M = {c.completion.mean:.2f}, SD = {c.completion.sd:.2f}; "
            f"accuracy M = {c.accuracy.mean:.3f}, SD = {c.accuracy.sd:.3f}"
        )
    m = analysis.manova
    lines.append(
        f"MANOVA (accuracy, completion): Wilks lambda = {m.wilks_lambda:.4f}, "
        f"F({_fmt_df(m.df1)},{_fmt_df(m.df2)}) = {m.f_approx:.2f}, {format_p(m.p)}"
    )
    a = analysis.completion_anova
    lines.append(
        f"ANOVA completion time: F({a.df1},{a.df2}) = {a.f_stat:.2f}, {format_p(a.p)}"
    )
    a = analysis.accuracy_anova
    lines.append(f"ANOVA accuracy: F({a.df1},{a.df2}) = {a.f_stat:.2f}, {format_p(a.p)}")
    lines.append(f"Tukey HSD on completion time (alpha = {analysis.completion_tukey.alpha:g}):")
    for pair in analysis.completion_tukey.pairs:
        marker = "*" if pair.significant else " "
        lines.append(
            f" {marker} {pair.label_a} vs {pair.label_b}: diff = {pair.mean_diff:.2f}, "
            f"q = {pair.q_stat:.2f}, {format_p(pair.p)}"
        )
    if analysis.retention is None:
        lines.append("Retention: no dropouts recorded, chi-square not applicable")
    else:
        r = analysis.retention
        lines.append(f"Retention: chi2({r.df}) = {r.statistic:.2f}, {format_p(r.p)}")
    return "\n".join(lines)


def descriptives(values: Iterable[float]) -> tuple[float, float]:
    """(mean, sample SD) of a value sequence."""
    data = list(values)
    mean = sum(data) / len(data)
    if len(data) < 2:
        return mean, 0.0
    sd = math.sqrt(sum((v - mean) ** 2 for v in data) / (len(data) - 1))
    return mean, sd
