import numpy as np

from core.domain.errors import DomainError


def _pair(y_true, y_pred) -> tuple[np.ndarray, np.ndarray]:
    t = np.asarray(y_true, dtype=float).ravel()
    p = np.asarray(y_pred, dtype=float).ravel()
    if t.shape != p.shape:
        raise DomainError(f"length mismatch: {t.size} targets vs {p.size} predictions")
    if t.size == 0:
        raise DomainError("metrics need at least one sample")
    return t, p


def mse(y_true, y_pred) -> float:
    t, p = _pair(y_true, y_pred)
    return float(np.mean((t - p) ** 2))


def r2(y_true, y_pred) -> float:
    t, p = _pair(y_true, y_pred)
    ss_tot = float(np.sum((t - t.mean()) ** 2))
    if ss_tot == 0.0:
        raise DomainError("R^2 undefined: targets have zero variance")
    return 1.0 - float(np.sum((t - p) ** 2)) / ss_tot


def adjust_r2(score: float, n: int, p: int) -> float:
    """1 - (1 - R^2)(n - 1)/(n - p - 1)."""
    if n <= p + 1:
        raise DomainError(f"adjusted R^2 needs n > p + 1, got n={n}, p={p}")
    return 1.0 - (1.0 - score) * (n - 1) / (n - p - 1)


def adjusted_r2(y_true, y_pred, p: int) -> float:
    t, _ = _pair(y_true, y_pred)
    if t.size <= p + 1:
        raise DomainError(f"adjusted R^2 needs n > p + 1, got n={t.size}, p={p}")
    return adjust_r2(r2(y_true, y_pred), t.size, p)


__all__ = ["mse", "r2", "adjust_r2", "adjusted_r2"]
