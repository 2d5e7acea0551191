import hashlib
import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from core.domain.trials import CognitiveFactors

Target = Literal["b", "sigma_x", "sigma_y"]
TARGETS: tuple[Target, ...] = ("b", "sigma_x", "sigma_y")
SIGMA_TARGETS = frozenset({"sigma_x", "sigma_y"})

N_INPUTS = 3


@dataclass(frozen=True, eq=False)
class Standardizer:
    """Per-feature zero-mean, unit-variance transform of (theta, leg, dist)."""

    mean: np.ndarray
    scale: np.ndarray

    @classmethod
    def fit(cls, x: np.ndarray) -> "Standardizer":
        x = as_inputs(x)
        scale = x.std(axis=0)
        scale = np.where(scale > 0, scale, 1.0)
        return cls(mean=x.mean(axis=0), scale=scale)

    def transform(self, x: np.ndarray) -> np.ndarray:
        return (as_inputs(x) - self.mean) / self.scale

    def to_dict(self) -> dict[str, list[float]]:
        return {"mean": self.mean.tolist(), "scale": self.scale.tolist()}

    @classmethod
    def from_dict(cls, data: dict[str, Sequence[float]]) -> "Standardizer":
        return cls(
            mean=np.asarray(data["mean"], dtype=float),
            scale=np.asarray(data["scale"], dtype=float),
        )


def as_inputs(x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[1] != N_INPUTS:
        raise ValueError(f"expected inputs of shape (n, {N_INPUTS}), got {arr.shape}")
    return arr


def monomial_count(order: int) -> int:
    """Monomials in three variables up to the order, intercept included."""
    return math.comb(N_INPUTS + order, N_INPUTS)


def factors_to_xy(
    data: Sequence[CognitiveFactors], target: Target
) -> tuple[np.ndarray, np.ndarray]:
    x = np.array([f.params.as_tuple() for f in data], dtype=float).reshape(-1, N_INPUTS)
    y = np.array([f.value(target) for f in data], dtype=float)
    return x, y


def data_hash(x: np.ndarray, y: np.ndarray) -> str:
    digest = hashlib.sha256()
    digest.update(np.ascontiguousarray(x, dtype=float).tobytes())
    digest.update(np.ascontiguousarray(y, dtype=float).tobytes())
    return digest.hexdigest()[:16]


__all__ = [
    "Target",
    "TARGETS",
    "SIGMA_TARGETS",
    "N_INPUTS",
    "Standardizer",
    "as_inputs",
    "monomial_count",
    "factors_to_xy",
    "data_hash",
]
