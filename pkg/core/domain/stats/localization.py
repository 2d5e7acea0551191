import math
from typing import Sequence

import numpy as np

from core.domain.errors import DomainError


def localization_error(estimate: tuple[float, float], d_poi: float) -> float:
    """Euclidean distance from an estimate to the POI at (d_poi, 0)."""
    x, y = estimate
    if not all(math.isfinite(v) for v in (x, y, d_poi)):
        raise DomainError(f"non-finite estimate {estimate!r} or d_poi {d_poi!r}")
    return math.hypot(x - d_poi, y)


def rmse(errors: Sequence[float]) -> float:
    arr = np.asarray(errors, dtype=float)
    if arr.size == 0:
        raise DomainError("rmse of an empty error list")
    if not np.all(np.isfinite(arr)):
        raise DomainError("rmse needs finite errors")
    return float(np.sqrt(np.mean(arr**2)))


__all__ = ["localization_error", "rmse"]
