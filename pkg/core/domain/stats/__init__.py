from .localization import localization_error, rmse
from .wilcoxon import (
    Method,
    EXACT_THRESHOLD,
    PairedSample,
    TestResult,
    bonferroni,
    wilcoxon_signed_rank,
)
from .evaluation import (
    COMPARISONS,
    DEFAULT_FAMILY_SIZE,
    Estimates,
    ComparisonRow,
    WedgeScore,
    evaluate_wedges,
)

__all__ = [
    # Value Objects
    "PairedSample",
    "TestResult",
    "ComparisonRow",
    "WedgeScore",
    # Types
    "Method",
    "Estimates",
    # Constants
    "EXACT_THRESHOLD",
    "COMPARISONS",
    "DEFAULT_FAMILY_SIZE",
    # Functions
    "localization_error",
    "rmse",
    "bonferroni",
    "wilcoxon_signed_rank",
    "evaluate_wedges",
]
