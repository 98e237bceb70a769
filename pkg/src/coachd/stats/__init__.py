"""Statistics toolkit: WER, ANOVA/MANOVA/Tukey/chi-square, deployment tables."""

from .analysis import (
    CSV_HEADER,
    ConditionSummary,
    CsvFormatError,
    ExperimentAnalysis,
    TaskRow,
    analyze_conditions,
    analyze_rows,
    format_analysis,
    format_p,
    load_experiment_csv,
    rows_to_conditions,
)
from .deployment import DeploymentRow, DeploymentTable, deployment_table, format_deployment_table
from .inference import (
    AnovaResult,
    BivariateGroupSample,
    ChiSquareResult,
    DegenerateMarginsError,
    DegenerateVarianceError,
    GroupSample,
    InsufficientDataError,
    ManovaResult,
    SingularWithinError,
    TukeyPair,
    TukeyResult,
    chi_square_contingency,
    one_way_anova,
    one_way_manova,
    tukey_hsd,
)
from .special import (
    InvalidParameterError,
    chi2_survival,
    f_survival,
    normal_cdf,
    regularized_incomplete_beta,
    regularized_upper_gamma,
    studentized_range_survival,
)
from .wer import EmptyReferenceError, WerResult, tokenize_transcript, wer

__all__ = [
    "AnovaResult",
    "BivariateGroupSample",
    "CSV_HEADER",
    "ChiSquareResult",
    "ConditionSummary",
    "CsvFormatError",
    "DegenerateMarginsError",
    "DegenerateVarianceError",
    "DeploymentRow",
    "DeploymentTable",
    "EmptyReferenceError",
    "ExperimentAnalysis",
    "GroupSample",
    "InsufficientDataError",
    "InvalidParameterError",
    "ManovaResult",
    "SingularWithinError",
    "TaskRow",
    "TukeyPair",
    "TukeyResult",
    "WerResult",
    "analyze_conditions",
    "analyze_rows",
    "chi2_survival",
    "chi_square_contingency",
    "deployment_table",
    "f_survival",
    "format_analysis",
    "format_deployment_table",
    "format_p",
    "load_experiment_csv",
    "normal_cdf",
    "one_way_anova",
    "one_way_manova",
    "regularized_incomplete_beta",
    "regularized_upper_gamma",
    "rows_to_conditions",
    "studentized_range_survival",
    "tokenize_transcript",
    "tukey_hsd",
    "wer",
]
