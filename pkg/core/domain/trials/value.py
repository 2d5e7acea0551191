import math
from dataclasses import dataclass

from core.domain.errors import DomainError
from core.domain.geometry import WedgeParams


@dataclass(frozen=True, eq=True)
class TrialRecord:
    """One estimate of the invisible vertex under a displayed wedge."""

    participant_id: str
    params: WedgeParams
    estimate_x: float  # along +x, off-screen axis
    estimate_y: float  # lateral
    repetition: int = 0

    def __post_init__(self):
        if not isinstance(self.params, WedgeParams):
            raise DomainError("TrialRecord.params must be WedgeParams")
        if not (math.isfinite(self.estimate_x) and math.isfinite(self.estimate_y)):
            raise DomainError("TrialRecord estimates must be finite")

    @property
    def estimate(self) -> tuple[float, float]:
        return (self.estimate_x, self.estimate_y)


@dataclass(frozen=True, eq=True)
class CognitiveFactors:
    """
    Bias and individual differences of one condition after outlier removal.

    bias_b is positive when estimates land farther off-screen than the vertex.
    """

    params: WedgeParams
    bias_b: float
    sigma_x: float
    sigma_y: float
    n_used: int
    n_removed: int = 0

    def __post_init__(self):
        if self.sigma_x < 0 or self.sigma_y < 0:
            raise DomainError("CognitiveFactors sigmas must be >= 0")
        if self.n_used < 2:
            raise DomainError("CognitiveFactors needs n_used >= 2")
        if self.n_removed < 0:
            raise DomainError("CognitiveFactors n_removed must be >= 0")

    def value(self, target: str) -> float:
        return {
            "b": self.bias_b,
            "sigma_x": self.sigma_x,
            "sigma_y": self.sigma_y,
        }[target]


__all__ = [
    "TrialRecord",
    "CognitiveFactors",
]
