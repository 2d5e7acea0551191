import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from core.domain.errors import DomainError
from core.domain.geometry import DrawableArea, WedgeParams

Mode = Literal["VW", "UOW", "BOW"]
MODES: tuple[Mode, ...] = ("VW", "UOW", "BOW")


@dataclass(frozen=True)
class ConstraintSet:
    """
    Drawable-area constraints, domain margins and the penalty schedule.

    g1 = l*cos(theta/2) - d - W <= 0 and g2 = 2*l*sin(theta/2) - H <= 0 are
    enforced by an exterior quadratic penalty with weight mu0 * growth^k at
    stage k. Domain bounds are kept by projection with margin.

    UOW also starts from the argmin of a seed_resolution x seed_resolution
    landscape (0 turns that start off).
    """

    drawable: DrawableArea = field(default_factory=lambda: DrawableArea(14.0, 14.0))
    mu0: float = 1.0
    growth: float = 10.0
    max_stages: int = 8
    margin: float = 1e-4
    leg_max: float | None = None
    max_iter: int = 10_000
    f_tol: float = 1e-8
    step_tol: float = 1e-10
    feasibility_tol: float = 1e-6
    seed_resolution: int = 200

    def __post_init__(self):
        if not self.mu0 > 0:
            raise DomainError("mu0 must be > 0")
        if not self.growth > 1:
            raise DomainError("growth must be > 1")
        if self.max_stages < 1 or self.max_iter < 1:
            raise DomainError("max_stages and max_iter must be >= 1")
        if not 0 < self.margin < 0.1:
            raise DomainError("margin must be in (0, 0.1)")
        if self.leg_max is not None and not self.leg_max > 0:
            raise DomainError("leg_max must be > 0")
        if self.seed_resolution != 0 and self.seed_resolution < 2:
            raise DomainError("seed_resolution must be 0 (off) or >= 2")

    @property
    def mu_max(self) -> float:
        return self.mu0 * self.growth ** (self.max_stages - 1)

    def stage_weights(self) -> list[float]:
        return [self.mu0 * self.growth**k for k in range(self.max_stages)]

    def leg_upper(self, d_poi: float) -> float:
        """Configured leg cap, else twice the drawable diagonal seen from the POI."""
        if self.leg_max is not None:
            return self.leg_max
        return 2.0 * math.hypot(self.drawable.max_width + d_poi, self.drawable.max_height / 2)


@dataclass(frozen=True, eq=False)
class OptimizationResult:
    """
    Optimized wedge of one mode at one POI distance.

    `trace` holds the penalized objective after every accepted step, stage
    after stage; `stage_offsets[k]` is where stage k starts in it. Values are
    non-increasing within a stage. `objective` is the penalized objective at
    the terminal penalty weight.
    """

    mode: Mode
    d_poi: float
    params: WedgeParams
    objective: float
    pure_cost: float
    constraint_values: tuple[float, float]
    iterations: int
    converged: bool
    trace: tuple[float, ...] = ()
    stage_offsets: tuple[int, ...] = ()

    def stage_traces(self) -> list[tuple[float, ...]]:
        bounds = list(self.stage_offsets) + [len(self.trace)]
        return [self.trace[a:b] for a, b in zip(bounds[:-1], bounds[1:])]

    def feasible(self, tol: float = 1e-6) -> bool:
        return all(g <= tol for g in self.constraint_values)

    def active(self, tol: float = 1e-6) -> tuple[bool, bool]:
        """Which of (g1, g2) bind at the result."""
        return tuple(abs(g) <= tol or g > 0 for g in self.constraint_values)


@dataclass(frozen=True, eq=False)
class Landscape:
    """
    Penalized objective over a (theta, leg) grid at fixed dist.

    `objective[i, j]` belongs to (thetas[i], legs[j]); infeasible cells hold
    NaN. `argmin` is the first minimum in theta-major order (smallest theta,
    then smallest leg), None when no cell is feasible.
    """

    mode: Mode
    d_poi: float
    dist: float
    thetas: np.ndarray
    legs: np.ndarray
    objective: np.ndarray
    feasible: np.ndarray
    argmin: tuple[int, int] | None

    @property
    def argmin_params(self) -> WedgeParams | None:
        if self.argmin is None:
            return None
        i, j = self.argmin
        return WedgeParams(float(self.thetas[i]), float(self.legs[j]), self.dist)

    @property
    def min_objective(self) -> float | None:
        if self.argmin is None:
            return None
        return float(self.objective[self.argmin])

    def rows(self) -> list[tuple[float, float, float, bool]]:
        """(theta, leg, cost, feasible) in theta-major order."""
        out = []
        for i, t in enumerate(self.thetas):
            for j, leg in enumerate(self.legs):
                out.append((float(t), float(leg), float(self.objective[i, j]), bool(self.feasible[i, j])))
        return out


@dataclass(frozen=True, eq=False)
class WedgeTriple:
    """VW, UOW and BOW results of one POI distance with the effect flags."""

    d_poi: float
    vw: OptimizationResult
    uow: OptimizationResult
    bow: OptimizationResult

    @property
    def e1(self) -> bool:
        """UOW opens wider than VW."""
        return self.uow.params.theta > self.vw.params.theta

    @property
    def e2(self) -> bool:
        """BOW vertex lies farther than the POI."""
        return self.bow.params.vertex_dist > self.d_poi

    def results(self) -> tuple[OptimizationResult, OptimizationResult, OptimizationResult]:
        return (self.vw, self.uow, self.bow)


__all__ = [
    "Mode",
    "MODES",
    "ConstraintSet",
    "OptimizationResult",
    "Landscape",
    "WedgeTriple",
]
