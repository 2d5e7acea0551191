from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Sequence

import numpy as np
from loguru import logger

from core.domain.errors import (
    DegenerateSampleError,
    DomainError,
    InsufficientDataError,
)
from core.domain.geometry import WedgeParams

from .outliers import DEFAULT_ALPHA, outlier_mask
from .value import TrialRecord, CognitiveFactors

MIN_TRIALS = 3
MIN_USED = 2


def group_by_params(
    trials: Iterable[TrialRecord],
) -> dict[WedgeParams, list[TrialRecord]]:
    """Group records by condition, keeping first-appearance order."""
    groups: dict[WedgeParams, list[TrialRecord]] = {}
    for trial in trials:
        groups.setdefault(trial.params, []).append(trial)
    return groups


def extract_factors(
    trials: Sequence[TrialRecord],
    alpha: float = DEFAULT_ALPHA,
    min_used: int = MIN_USED,
) -> CognitiveFactors:
    """
    Bias and individual differences of one condition.

    b = mean(x) - d and sigma_x, sigma_y are n-1 standard deviations, all
    computed after Hotelling filtering. A singular sample covariance skips
    the filter and the condition is aggregated as is.
    """
    if len(trials) < MIN_TRIALS:
        raise InsufficientDataError(
            f"condition needs at least {MIN_TRIALS} trials, got {len(trials)}"
        )
    params = trials[0].params
    if any(t.params != params for t in trials):
        raise DomainError("extract_factors expects trials of a single condition")

    points = np.array([t.estimate for t in trials], dtype=float)
    try:
        removed = outlier_mask(points, alpha)
    except DegenerateSampleError:
        removed = np.zeros(len(points), dtype=bool)

    kept = points[~removed]
    if len(kept) < min_used:
        raise InsufficientDataError(
            f"condition keeps {len(kept)} trials after filtering, needs {min_used}"
        )

    return CognitiveFactors(
        params=params,
        bias_b=float(kept[:, 0].mean() - params.vertex_dist),
        sigma_x=float(kept[:, 0].std(ddof=1)),
        sigma_y=float(kept[:, 1].std(ddof=1)),
        n_used=int(len(kept)),
        n_removed=int(removed.sum()),
    )


def extract_all(
    trials: Iterable[TrialRecord],
    alpha: float = DEFAULT_ALPHA,
    min_used: int = MIN_USED,
    workers: int = 1,
) -> list[CognitiveFactors]:
    """Factors of every condition; conditions with too few samples are skipped."""
    groups = list(group_by_params(trials).items())

    def _one(item: tuple[WedgeParams, list[TrialRecord]]) -> CognitiveFactors | None:
        params, records = item
        try:
            return extract_factors(records, alpha=alpha, min_used=min_used)
        except InsufficientDataError as e:
            logger.bind(params=params.as_tuple()).warning(
                f"Condition excluded from regression: {e}"
            )
            return None

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_one, groups))
    else:
        results = [_one(g) for g in groups]

    factors = [f for f in results if f is not None]
    logger.bind(conditions=len(groups), used=len(factors)).info("Factors extracted")
    return factors


__all__ = [
    "MIN_TRIALS",
    "MIN_USED",
    "group_by_params",
    "extract_factors",
    "extract_all",
]
