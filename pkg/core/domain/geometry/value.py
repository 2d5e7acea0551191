import math
from dataclasses import dataclass
from typing import Sequence

from core.domain.errors import DomainError

from .domain import is_valid


@dataclass(frozen=True, eq=True)
class WedgeParams:
    """
    Shape of a wedge cue plus the distance of its invisible vertex.

    theta is the aperture in radians, leg the length of both equal sides and
    vertex_dist the distance from the screen-edge origin to the vertex, all
    lengths in meters.
    """

    theta: float
    leg: float
    vertex_dist: float

    def __post_init__(self):
        for name in ("theta", "leg", "vertex_dist"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if not is_valid(self.theta, self.leg, self.vertex_dist):
            raise DomainError(
                "WedgeParams outside domain: need 0 < theta < pi and "
                f"0 < d < l*cos(theta/2), got theta={self.theta!r}, "
                f"leg={self.leg!r}, d={self.vertex_dist!r}"
            )

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.theta, self.leg, self.vertex_dist)


class Frame:
    """
    Coordinate frame of a single wedge.

    The origin is the POI's nearest point on the screen edge, +x points
    off-screen along the wedge's perpendicular bisector and y is lateral.
    The screen edge is the line x = 0 and the screen lies at x <= 0.
    """

    SCREEN_EDGE_X = 0.0

    @staticmethod
    def vertex(p: WedgeParams) -> tuple[float, float]:
        return (p.vertex_dist, 0.0)

    @staticmethod
    def base_endpoints(
        p: WedgeParams,
    ) -> tuple[tuple[float, float], tuple[float, float]]:
        x = p.vertex_dist - p.leg * math.cos(p.theta / 2)
        y = p.leg * math.sin(p.theta / 2)
        return (x, y), (x, -y)


@dataclass(frozen=True, eq=True)
class DrawableArea:
    """Maximum on-screen bounding box (W, H) a wedge may occupy, meters."""

    max_width: float
    max_height: float

    def __post_init__(self):
        if not (self.max_width > 0 and self.max_height > 0):
            raise DomainError("DrawableArea needs max_width > 0 and max_height > 0")

    def scaled(self, factor: float) -> "DrawableArea":
        return DrawableArea(self.max_width * factor, self.max_height * factor)


@dataclass(frozen=True, eq=True)
class ParamGrid:
    """Experimental parameter grid. Angles are stored in radians."""

    thetas: tuple[float, ...]
    legs: tuple[float, ...]
    dists: tuple[float, ...]

    def __post_init__(self):
        for name in ("thetas", "legs", "dists"):
            values = tuple(float(v) for v in getattr(self, name))
            object.__setattr__(self, name, values)
            if not values:
                raise DomainError(f"ParamGrid.{name} must be non-empty")
            if any(not (v > 0 and math.isfinite(v)) for v in values):
                raise DomainError(f"ParamGrid.{name} must be positive and finite")
            if any(b <= a for a, b in zip(values, values[1:])):
                raise DomainError(f"ParamGrid.{name} must be strictly increasing")

    @classmethod
    def from_degrees(
        cls,
        theta_deg: Sequence[float],
        leg_m: Sequence[float],
        dist_m: Sequence[float],
    ) -> "ParamGrid":
        return cls(
            thetas=tuple(math.radians(t) for t in theta_deg),
            legs=tuple(leg_m),
            dists=tuple(dist_m),
        )

    @property
    def size(self) -> int:
        return len(self.thetas) * len(self.legs) * len(self.dists)

    def scaled(self, factor: float) -> "ParamGrid":
        """Rescale lengths linearly; angles are scale free."""
        return ParamGrid(
            thetas=self.thetas,
            legs=tuple(v * factor for v in self.legs),
            dists=tuple(v * factor for v in self.dists),
        )


__all__ = [
    "WedgeParams",
    "Frame",
    "DrawableArea",
    "ParamGrid",
]
