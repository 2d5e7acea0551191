import itertools
import json
import math
from dataclasses import dataclass
from pathlib import Path

from loguru import logger
from pydantic import BaseModel, ConfigDict, ValidationError

from core.domain.errors import ParseError

from .domain import is_valid
from .value import ParamGrid, WedgeParams

PUBLISHED_VALID_COUNT = 375

PUBLISHED_THETA_DEG = (10.0, 30.0, 50.0, 70.0, 90.0, 110.0, 130.0, 150.0)
PUBLISHED_LEG_M = tuple(float(v) for v in range(2, 13))
PUBLISHED_DIST_M = tuple(float(v) for v in range(1, 12))


@dataclass(frozen=True)
class GridCell:
    theta: float
    leg: float
    dist: float
    valid: bool

    @property
    def params(self) -> WedgeParams:
        return WedgeParams(self.theta, self.leg, self.dist)


@dataclass(frozen=True)
class GridEnumeration:
    cells: tuple[GridCell, ...]

    @property
    def total(self) -> int:
        return len(self.cells)

    @property
    def valid_count(self) -> int:
        return sum(1 for c in self.cells if c.valid)

    def valid_cells(self) -> list[GridCell]:
        return [c for c in self.cells if c.valid]


class GridDocument(BaseModel):
    """JSON grid document: angles in degrees, lengths in meters."""

    model_config = ConfigDict(extra="forbid")

    theta_deg: list[float]
    leg_m: list[float]
    dist_m: list[float]

    def to_grid(self) -> ParamGrid:
        return ParamGrid.from_degrees(self.theta_deg, self.leg_m, self.dist_m)


def published_grid() -> ParamGrid:
    return ParamGrid.from_degrees(PUBLISHED_THETA_DEG, PUBLISHED_LEG_M, PUBLISHED_DIST_M)


def load_grid(path: str | Path) -> ParamGrid:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return GridDocument.model_validate_json(text).to_grid()
    except ValidationError as e:
        raise ParseError(f"invalid grid document {path}: {e}") from e


def dump_grid(grid: ParamGrid) -> str:
    doc = GridDocument(
        theta_deg=[math.degrees(t) for t in grid.thetas],
        leg_m=list(grid.legs),
        dist_m=list(grid.dists),
    )
    return json.dumps(doc.model_dump(), indent=2)


def enumerate_grid(g: ParamGrid) -> GridEnumeration:
    """
    Full Cartesian product theta x leg x dist with per-cell validity.

    Order is theta-major, then leg, then dist.
    """
    cells = tuple(
        GridCell(theta=t, leg=l, dist=d, valid=is_valid(t, l, d))
        for t, l, d in itertools.product(g.thetas, g.legs, g.dists)
    )
    result = GridEnumeration(cells=cells)
    logger.bind(total=result.total, valid=result.valid_count).info(
        "Grid enumerated"
    )
    return result


def compare_with_published(result: GridEnumeration) -> int:
    """
    Log the computed valid count against the published one.

    Returns the signed difference (computed - published).
    """
    diff = result.valid_count - PUBLISHED_VALID_COUNT
    log = logger.bind(computed=result.valid_count, published=PUBLISHED_VALID_COUNT)
    if diff:
        log.warning(
            "Valid combination count differs from the published count; "
            "strict 0 < d < l*cos(theta/2) is applied without extra conditions"
        )
    else:
        log.info("Valid combination count matches the published count")
    return diff


__all__ = [
    "PUBLISHED_VALID_COUNT",
    "GridCell",
    "GridEnumeration",
    "GridDocument",
    "published_grid",
    "load_grid",
    "dump_grid",
    "enumerate_grid",
    "compare_with_published",
]
