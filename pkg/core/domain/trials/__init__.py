from .value import TrialRecord, CognitiveFactors
from .outliers import (
    DEFAULT_ALPHA,
    mahalanobis_sq,
    chi2_threshold,
    outlier_mask,
    hotelling_filter,
)
from .factors import (
    MIN_TRIALS,
    MIN_USED,
    group_by_params,
    extract_factors,
    extract_all,
)

__all__ = [
    # Value Objects
    "TrialRecord",
    "CognitiveFactors",
    # Constants
    "DEFAULT_ALPHA",
    "MIN_TRIALS",
    "MIN_USED",
    # Functions
    "mahalanobis_sq",
    "chi2_threshold",
    "outlier_mask",
    "hotelling_filter",
    "group_by_params",
    "extract_factors",
    "extract_all",
]
