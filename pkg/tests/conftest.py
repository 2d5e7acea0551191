from dataclasses import dataclass
from typing import Callable

import numpy as np
import pytest
from loguru import logger

from core.domain.geometry import ParamGrid, published_grid
from core.domain.models import CognitiveModel
from core.domain.synth import LatentField

EPS2 = 0.1


@dataclass(frozen=True)
class FnRegressor:
    """Closed-form regressor over rows of (theta, leg, dist)."""

    target: str
    fn: Callable[[np.ndarray], np.ndarray]

    family = "closed-form"

    def predict_many(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float).reshape(-1, 3)
        return np.asarray(self.fn(x), dtype=float)


def bowl_model(theta_star: float = 0.6, leg_star: float = 4.0, slope: float = 2.0) -> CognitiveModel:
    """
    Zero UOW cost exactly at (theta_star, leg_star) for any d_poi.

    b vanishes at theta_star, sigma_x is sqrt(eps2) everywhere and sigma_y
    crosses sqrt(eps2) at leg_star.
    """
    s = np.sqrt(EPS2)
    return CognitiveModel(
        model_b=FnRegressor("b", lambda x: slope * (x[:, 0] - theta_star)),
        model_sx=FnRegressor("sigma_x", lambda x: np.full(len(x), s)),
        model_sy=FnRegressor("sigma_y", lambda x: s * np.exp(0.3 * (x[:, 1] - leg_star))),
        metadata={"family": "closed-form"},
    )


@pytest.fixture
def grid() -> ParamGrid:
    return published_grid()


@pytest.fixture
def field() -> LatentField:
    return LatentField()


@pytest.fixture
def field_model(field) -> CognitiveModel:
    return field.as_model()


@pytest.fixture
def bowl() -> CognitiveModel:
    return bowl_model()


@pytest.fixture
def log_messages():
    """Messages logged through loguru while the test runs, with their level."""
    records: list[tuple[str, str]] = []
    sink_id = logger.add(lambda m: records.append((m.record["level"].name, m.record["message"])))
    yield records
    logger.remove(sink_id)


def perfect_model(d_poi: float) -> CognitiveModel:
    """P equals Q for every wedge: b = d_poi - d and both sigmas at sqrt(eps2)."""
    s = np.sqrt(EPS2)
    return CognitiveModel(
        model_b=FnRegressor("b", lambda x: d_poi - x[:, 2]),
        model_sx=FnRegressor("sigma_x", lambda x: np.full(len(x), s)),
        model_sy=FnRegressor("sigma_y", lambda x: np.full(len(x), s)),
        metadata={"family": "closed-form"},
    )


def two_basin_model(slope: float = 2.0) -> CognitiveModel:
    """
    Bias vanishes at theta 0.6 and 2.0; only the first is a zero-cost minimum.

    sigma_x grows away from theta 0.6, so the basin at 2.0 keeps a positive
    cost. sigma_y is the bowl's, with its minimum at leg 4.
    """
    s = np.sqrt(EPS2)
    return CognitiveModel(
        model_b=FnRegressor("b", lambda x: slope * (x[:, 0] - 0.6) * (x[:, 0] - 2.0)),
        model_sx=FnRegressor("sigma_x", lambda x: s * (1.0 + 0.3 * (x[:, 0] - 0.6) ** 2)),
        model_sy=FnRegressor("sigma_y", lambda x: s * np.exp(0.3 * (x[:, 1] - 4.0))),
        metadata={"family": "closed-form"},
    )
