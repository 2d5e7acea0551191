import math
from dataclasses import dataclass

from core.domain.errors import DomainError
from core.domain.models import CognitiveModel

DEFAULT_EPS2: tuple[float, float] = (0.1, 0.1)


@dataclass(frozen=True, eq=True)
class Gauss2Diag:
    """2D normal with independent dimensions; x off-screen, y lateral."""

    mean_x: float
    mean_y: float
    var_x: float
    var_y: float

    def __post_init__(self):
        values = (self.mean_x, self.mean_y, self.var_x, self.var_y)
        if not all(math.isfinite(v) for v in values):
            raise DomainError(f"Gauss2Diag fields must be finite, got {values}")
        if self.var_x <= 0 or self.var_y <= 0:
            raise DomainError(f"Gauss2Diag variances must be > 0, got {self.var_x}, {self.var_y}")

    @property
    def mean(self) -> tuple[float, float]:
        return (self.mean_x, self.mean_y)

    @property
    def var(self) -> tuple[float, float]:
        return (self.var_x, self.var_y)


@dataclass(frozen=True, eq=False)
class CostContext:
    """Everything the cognitive cost needs besides the wedge parameters."""

    model: CognitiveModel
    d_poi: float
    eps2: tuple[float, float] = DEFAULT_EPS2

    def __post_init__(self):
        eps2 = tuple(float(v) for v in self.eps2)
        object.__setattr__(self, "eps2", eps2)
        if len(eps2) != 2 or any(not (v > 0 and math.isfinite(v)) for v in eps2):
            raise DomainError(f"eps2 components must be > 0, got {self.eps2!r}")
        if not math.isfinite(self.d_poi) or self.d_poi < 0:
            raise DomainError(f"d_poi must be finite and >= 0, got {self.d_poi!r}")

    def with_d_poi(self, d_poi: float) -> "CostContext":
        return CostContext(model=self.model, d_poi=d_poi, eps2=self.eps2)


__all__ = ["DEFAULT_EPS2", "Gauss2Diag", "CostContext"]
