"""
Closed-form ground-truth factor fields for synthetic observers.

    b*(theta, l, d)  = alpha * d + beta
    sx*(theta, l, d) = s0 + s1 * (1 - theta/pi) * d
    sy*(theta, l, d) = t0 + t1 * (theta/pi) * l

alpha < 0 makes the bias increasingly negative with distance; theta trades
lateral against depth spread.
"""

import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError

from core.domain.errors import DomainError, ParseError
from core.domain.geometry import WedgeParams
from core.domain.models import DEFAULT_SIGMA_FLOOR, CognitiveModel, Target
from core.domain.models.features import as_inputs


@dataclass(frozen=True, eq=True)
class LatentField:
    alpha: float = -0.08
    beta: float = 0.05
    s0: float = 0.3
    s1: float = 0.05
    t0: float = 0.2
    t1: float = 0.1

    def __post_init__(self):
        if not all(math.isfinite(v) for v in asdict(self).values()):
            raise DomainError("LatentField parameters must be finite")
        if self.s0 <= 0 or self.t0 <= 0 or self.s1 < 0 or self.t1 < 0:
            raise DomainError("LatentField needs s0, t0 > 0 and s1, t1 >= 0")

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """Columns (b*, sx*, sy*) for rows of (theta, leg, dist)."""
        x = as_inputs(x)
        theta, leg, dist = x[:, 0], x[:, 1], x[:, 2]
        frac = theta / math.pi
        return np.column_stack(
            [
                self.alpha * dist + self.beta,
                self.s0 + self.s1 * (1.0 - frac) * dist,
                self.t0 + self.t1 * frac * leg,
            ]
        )

    def factors(self, p: WedgeParams) -> tuple[float, float, float]:
        b, sx, sy = self.evaluate(np.array([p.as_tuple()]))[0]
        return float(b), float(sx), float(sy)

    def as_model(self, sigma_floor: float = DEFAULT_SIGMA_FLOOR) -> CognitiveModel:
        """Oracle cognitive model predicting the fields exactly."""
        return CognitiveModel(
            model_b=FieldRegressor(self, "b"),
            model_sx=FieldRegressor(self, "sigma_x"),
            model_sy=FieldRegressor(self, "sigma_y"),
            sigma_floor=sigma_floor,
            metadata={"family": "field", **asdict(self)},
        )


_COLUMN = {"b": 0, "sigma_x": 1, "sigma_y": 2}


@dataclass(frozen=True)
class FieldRegressor:
    field: LatentField
    target: Target

    family = "field"

    def predict_many(self, x: np.ndarray) -> np.ndarray:
        return self.field.evaluate(x)[:, _COLUMN[self.target]]


class FieldDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    alpha: float
    beta: float
    s0: float
    s1: float
    t0: float
    t1: float


def load_field(path: str | Path) -> LatentField:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = FieldDocument.model_validate_json(text)
    except ValidationError as e:
        raise ParseError(f"invalid latent field document {path}: {e}") from e
    return LatentField(**doc.model_dump())


def dump_field(f: LatentField) -> str:
    return json.dumps(FieldDocument(**asdict(f)).model_dump(), indent=2)


__all__ = [
    "LatentField",
    "FieldRegressor",
    "FieldDocument",
    "load_field",
    "dump_field",
]
