from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from loguru import logger

from core.domain.errors import DomainError
from core.domain.geometry import ParamGrid, WedgeParams, enumerate_grid
from core.domain.trials import TrialRecord

from .field import LatentField


@dataclass(frozen=True, eq=True)
class ObserverConfig:
    """
    Synthetic participant pool.

    Outliers replace an estimate with a uniform draw over the square of
    half-width `outlier_box` centred on the vertex.
    """

    participants: int = 20
    repetitions: int = 1
    seed: int = 0
    outlier_rate: float = 0.02
    outlier_box: float = 30.0

    def __post_init__(self):
        if self.participants < 1 or self.repetitions < 1:
            raise DomainError("participants and repetitions must be >= 1")
        if not 0.0 <= self.outlier_rate < 1.0:
            raise DomainError(f"outlier_rate must be in [0, 1), got {self.outlier_rate!r}")
        if not self.outlier_box > 0:
            raise DomainError("outlier_box must be > 0")

    @property
    def subjects(self) -> int:
        return self.participants * self.repetitions


def sample_condition(
    field: LatentField, params: WedgeParams, cfg: ObserverConfig, key: int
) -> tuple[np.ndarray, np.ndarray]:
    """
    Estimates of every subject for one displayed wedge.

    Rows are participant-major, then repetition. The stream depends only on
    (cfg.seed, key), so cells can be drawn in any order.
    """
    rng = np.random.default_rng([cfg.seed, key])
    n = cfg.subjects
    b, sx, sy = field.factors(params)
    z = rng.standard_normal((n, 2))
    points = np.column_stack([params.vertex_dist + b + sx * z[:, 0], sy * z[:, 1]])

    injected = rng.random(n) < cfg.outlier_rate
    box = rng.uniform(-cfg.outlier_box, cfg.outlier_box, size=(n, 2))
    points[injected] = box[injected] + np.array([params.vertex_dist, 0.0])
    return points, injected


def _records(params: WedgeParams, points: np.ndarray, cfg: ObserverConfig) -> list[TrialRecord]:
    out = []
    for i, (x, y) in enumerate(points):
        participant, rep = divmod(i, cfg.repetitions)
        out.append(
            TrialRecord(
                participant_id=f"P{participant + 1:02d}",
                params=params,
                estimate_x=float(x),
                estimate_y=float(y),
                repetition=rep,
            )
        )
    return out


def sample_trials(
    field: LatentField, grid: ParamGrid, cfg: ObserverConfig, workers: int = 1
) -> list[TrialRecord]:
    """Trials of every valid grid cell; cell k of the enumeration uses key k."""
    cells = [(k, c.params) for k, c in enumerate(enumerate_grid(grid).cells) if c.valid]
    if not cells:
        raise DomainError("grid has no valid cells")

    def _one(item: tuple[int, WedgeParams]) -> list[TrialRecord]:
        key, params = item
        points, _ = sample_condition(field, params, cfg, key)
        return _records(params, points, cfg)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_one, cells))
    else:
        chunks = [_one(c) for c in cells]

    trials = [t for chunk in chunks for t in chunk]
    logger.bind(cells=len(cells), trials=len(trials), seed=cfg.seed).info("Trials sampled")
    return trials


def sample_estimates(
    field: LatentField, params: WedgeParams, cfg: ObserverConfig, key: int
) -> list[tuple[float, float]]:
    """Per-subject estimates of one displayed wedge (evaluation observers)."""
    points, _ = sample_condition(field, params, cfg, key)
    return [(float(x), float(y)) for x, y in points]


__all__ = [
    "ObserverConfig",
    "sample_condition",
    "sample_trials",
    "sample_estimates",
]
