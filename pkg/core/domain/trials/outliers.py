from typing import Sequence

import numpy as np
from scipy import stats

from core.domain.errors import DegenerateSampleError, InsufficientDataError

DEFAULT_ALPHA = 0.05

# Covariance condition number beyond which the sample is treated as singular.
_MAX_CONDITION = 1e12

Point = tuple[float, float]


def mahalanobis_sq(points: np.ndarray) -> np.ndarray:
    """
    Squared Mahalanobis statistic of every row against the sample itself.

    Mean and covariance (n-1 denominator) come from all rows in one pass.
    """
    x = np.asarray(points, dtype=float)
    if x.ndim != 2 or x.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) array, got shape {x.shape}")
    if x.shape[0] < 3:
        raise InsufficientDataError(
            f"Hotelling filter needs at least 3 points, got {x.shape[0]}"
        )

    centered = x - x.mean(axis=0)
    cov = np.cov(x, rowvar=False, ddof=1)
    if not np.all(np.isfinite(cov)) or np.linalg.cond(cov) > _MAX_CONDITION:
        raise DegenerateSampleError(
            "sample covariance is singular (identical or collinear points)"
        )
    inv = np.linalg.inv(cov)
    return np.einsum("ij,jk,ik->i", centered, inv, centered)


def chi2_threshold(alpha: float = DEFAULT_ALPHA, dof: int = 2) -> float:
    """Upper-alpha quantile of chi-square; 5.9915 for alpha = 0.05, dof = 2."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha!r}")
    return float(stats.chi2.ppf(1.0 - alpha, df=dof))


def outlier_mask(points: np.ndarray, alpha: float = DEFAULT_ALPHA) -> np.ndarray:
    """True where the point's statistic exceeds the chi-square threshold."""
    return mahalanobis_sq(points) > chi2_threshold(alpha)


def hotelling_filter(
    points: Sequence[Point], alpha: float = DEFAULT_ALPHA
) -> tuple[list[Point], list[Point]]:
    """
    Single-pass Hotelling T^2 outlier removal on 2D estimates.

    Returns (kept, removed), both in input order.
    """
    pts = [(float(x), float(y)) for x, y in points]
    mask = outlier_mask(np.array(pts, dtype=float).reshape(-1, 2), alpha)
    kept = [p for p, out in zip(pts, mask) if not out]
    removed = [p for p, out in zip(pts, mask) if out]
    return kept, removed


__all__ = [
    "DEFAULT_ALPHA",
    "mahalanobis_sq",
    "chi2_threshold",
    "outlier_mask",
    "hotelling_filter",
]
