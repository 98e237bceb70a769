"""One-way ANOVA, one-way MANOVA (Wilks), Tukey-Kramer HSD, and chi-square.

Group data stays in plain Python; the bivariate MANOVA only ever needs 2x2
sums-of-squares matrices, so determinants are written out directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .special import chi2_survival, f_survival, studentized_range_survival

_SINGULAR_TOL = 1e-12


class InsufficientDataError(Exception):
    pass


class DegenerateVarianceError(Exception):
    pass


class SingularWithinError(Exception):
    pass


class DegenerateMarginsError(Exception):
    pass


@dataclass(frozen=True)
class GroupSample:
    label: str
    values: tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def mean(self) -> float:
        return sum(self.values) / len(self.values)

    @property
    def sd(self) -> float:
        """Sample standard deviation (n - 1 denominator)."""
        if len(self.values) < 2:
            raise InsufficientDataError("sd needs at least 2 values")
        m = self.mean
        return math.sqrt(sum((v - m) ** 2 for v in self.values) / (len(self.values) - 1))


@dataclass(frozen=True)
class BivariateGroupSample:
    label: str
    observations: tuple[tuple[float, float], ...]

    @property
    def n(self) -> int:
        return len(self.observations)

    def component(self, index: int) -> GroupSample:
        return GroupSample(self.label, tuple(obs[index] for obs in self.observations))


@dataclass(frozen=True)
class AnovaResult:
    f_stat: float
    df1: int
    df2: int
    p: float


@dataclass(frozen=True)
class ManovaResult:
    wilks_lambda: float
    f_approx: float
    df1: float
    df2: float
    p: float


@dataclass(frozen=True)
class TukeyPair:
    label_a: str
    label_b: str
    mean_diff: float
    standard_error: float
    q_stat: float
    p: float
    significant: bool


@dataclass(frozen=True)
class TukeyResult:
    alpha: float
    k: int
    df: int
    ms_within: float
    pairs: tuple[TukeyPair, ...]

    def pair(self, label_a: str, label_b: str) -> TukeyPair:
        wanted = {label_a, label_b}
        for p in self.pairs:
            if {p.label_a, p.label_b} == wanted:
                return p
        raise KeyError(f"no Tukey pair for {label_a!r} vs {label_b!r}")


@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    df: int
    p: float


def _check_groups(groups: Sequence[GroupSample]) -> None:
    if len(groups) < 2:
        raise InsufficientDataError("need at least 2 groups")
    for g in groups:
        if g.n < 2:
            raise InsufficientDataError(f"group {g.label!r} needs at least 2 values")


def _decompose(groups: Sequence[GroupSample]) -> tuple[float, float, int, int]:
    """(SS between, SS within, df1, df2) for the one-way layout."""
    total_n = sum(g.n for g in groups)
    grand = sum(sum(g.values) for g in groups) / total_n
    ss_between = sum(g.n * (g.mean - grand) ** 2 for g in groups)
    ss_within = sum(sum((v - g.mean) ** 2 for v in g.values) for g in groups)
    return ss_between, ss_within, len(groups) - 1, total_n - len(groups)


def one_way_anova(groups: Sequence[GroupSample]) -> AnovaResult:
    _check_groups(groups)
    ss_between, ss_within, df1, df2 = _decompose(groups)
    if ss_within <= 0.0:
        raise DegenerateVarianceError("zero within-group variance")
    f_stat = (ss_between / df1) / (ss_within / df2)
    return AnovaResult(f_stat, df1, df2, f_survival(f_stat, df1, df2))


def one_way_manova(groups: Sequence[BivariateGroupSample]) -> ManovaResult:
    """Wilks' lambda with Rao's F transform, exact for two response variables."""
    if len(groups) < 2:
        raise InsufficientDataError("need at least 2 groups")
    for g in groups:
        if g.n < 2:
            raise InsufficientDataError(f"group {g.label!r} needs at least 2 observations")
    g_count = len(groups)
    total_n = sum(g.n for g in groups)
    if total_n <= g_count + 1:
        raise InsufficientDataError("need more observations than groups + 1")

    grand = [0.0, 0.0]
    for g in groups:
        for x, y in g.observations:
            grand[0] += x
            grand[1] += y
    grand[0] /= total_n
    grand[1] /= total_n

    w = [[0.0, 0.0], [0.0, 0.0]]
    b = [[0.0, 0.0], [0.0, 0.0]]
    for g in groups:
        mx = sum(obs[0] for obs in g.observations) / g.n
        my = sum(obs[1] for obs in g.observations) / g.n
        for x, y in g.observations:
            dx, dy = x - mx, y - my
            w[0][0] += dx * dx
            w[0][1] += dx * dy
            w[1][1] += dy * dy
        dx, dy = mx - grand[0], my - grand[1]
        b[0][0] += g.n * dx * dx
        b[0][1] += g.n * dx * dy
        b[1][1] += g.n * dy * dy
    w[1][0] = w[0][1]
    b[1][0] = b[0][1]

    det_w = w[0][0] * w[1][1] - w[0][1] * w[1][0]
    if det_w <= _SINGULAR_TOL:
        raise SingularWithinError("within-group SSCP matrix is singular")
    t00, t01, t11 = w[0][0] + b[0][0], w[0][1] + b[0][1], w[1][1] + b[1][1]
    det_t = t00 * t11 - t01 * t01
    wilks = min(1.0, det_w / det_t)

    root = math.sqrt(wilks)
    df1 = 2.0 * (g_count - 1)
    df2 = 2.0 * (total_n - g_count - 1)
    f_approx = ((1.0 - root) / root) * ((total_n - g_count - 1) / (g_count - 1))
    return ManovaResult(wilks, f_approx, df1, df2, f_survival(f_approx, df1, df2))


def tukey_hsd(groups: Sequence[GroupSample], alpha: float = 0.05) -> TukeyResult:
    """Tukey-Kramer all-pairs comparison on the one-way layout."""
    _check_groups(groups)
    _, ss_within, _, df2 = _decompose(groups)
    if ss_within <= 0.0:
        raise DegenerateVarianceError("zero within-group variance")
    ms_within = ss_within / df2
    k = len(groups)

    pairs = []
    for i in range(k):
        for j in range(i + 1, k):
            gi, gj = groups[i], groups[j]
            diff = gi.mean - gj.mean
            se = math.sqrt((ms_within / 2.0) * (1.0 / gi.n + 1.0 / gj.n))
            q = abs(diff) / se
            p = studentized_range_survival(q, k, df2)
            pairs.append(TukeyPair(gi.label, gj.label, diff, se, q, p, p < alpha))
    return TukeyResult(alpha, k, df2, ms_within, tuple(pairs))


def chi_square_contingency(table: Sequence[Sequence[int]]) -> ChiSquareResult:
    """Pearson chi-square on an r x c table of counts."""
    rows = len(table)
    if rows < 2 or any(len(row) != len(table[0]) for row in table):
        raise ValueError("table must be rectangular with at least 2 rows")
    cols = len(table[0])
    if cols < 2:
        raise ValueError("table needs at least 2 columns")
    for row in table:
        for value in row:
            if value < 0:
                raise ValueError("counts must be non-negative")

    row_sums = [sum(row) for row in table]
    col_sums = [sum(row[j] for row in table) for j in range(cols)]
    total = sum(row_sums)
    if any(s == 0 for s in row_sums) or any(s == 0 for s in col_sums):
        raise DegenerateMarginsError("all row and column sums must be positive")

    statistic = 0.0
    for i in range(rows):
        for j in range(cols):
            expected = row_sums[i] * col_sums[j] / total
            statistic += (table[i][j] - expected) ** 2 / expected
    df = (rows - 1) * (cols - 1)
    return ChiSquareResult(statistic, df, chi2_survival(statistic, df))
