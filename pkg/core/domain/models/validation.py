from dataclasses import dataclass

import numpy as np
from sklearn.model_selection import KFold, train_test_split

from core.domain.errors import InsufficientDataError

DEFAULT_FOLDS = 5
DEFAULT_TEST_FRACTION = 0.2


@dataclass(frozen=True, eq=True)
class CvRow:
    """One line of the cross-validation report."""

    target: str
    family: str
    order_or_hyper: str
    fold: int
    mse: float


@dataclass(frozen=True, eq=True)
class HoldoutRow:
    """Held-out score of one fitted regressor; adj_r2 is None when undefined."""

    target: str
    family: str
    label: str
    mse: float
    adj_r2: float | None


def cv_splits(
    n: int, folds: int = DEFAULT_FOLDS, seed: int = 0
) -> list[tuple[np.ndarray, np.ndarray]]:
    """Shuffled k-fold index pairs; a pure function of (n, folds, seed)."""
    if n < folds:
        raise InsufficientDataError(f"{folds}-fold CV needs at least {folds} rows, got {n}")
    kf = KFold(n_splits=folds, shuffle=True, random_state=seed)
    return list(kf.split(np.arange(n)))


def holdout_split(
    n: int, test_fraction: float = DEFAULT_TEST_FRACTION, seed: int = 0
) -> tuple[np.ndarray, np.ndarray]:
    """Seeded train/test index split (80/20 by default)."""
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test_fraction must be in (0, 1), got {test_fraction!r}")
    idx = np.arange(n)
    train, test = train_test_split(idx, test_size=test_fraction, random_state=seed)
    return np.sort(train), np.sort(test)


__all__ = [
    "DEFAULT_FOLDS",
    "DEFAULT_TEST_FRACTION",
    "CvRow",
    "HoldoutRow",
    "cv_splits",
    "holdout_split",
]
