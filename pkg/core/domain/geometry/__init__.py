from .domain import is_valid, valid_mask
from .value import WedgeParams, Frame, DrawableArea, ParamGrid
from .wedge import (
    REFERENCE_VIEW_DISTANCE,
    DistanceBand,
    vw_params,
    footprint,
    wedge_polygon,
    onscreen_part,
    offscreen_part,
    viewing_angle_deg,
    distance_band,
)
from .grid import (
    PUBLISHED_VALID_COUNT,
    GridCell,
    GridEnumeration,
    GridDocument,
    published_grid,
    load_grid,
    dump_grid,
    enumerate_grid,
    compare_with_published,
)

__all__ = [
    # Value Objects
    "WedgeParams",
    "Frame",
    "DrawableArea",
    "ParamGrid",
    "GridCell",
    "GridEnumeration",
    "GridDocument",
    # Constants
    "REFERENCE_VIEW_DISTANCE",
    "PUBLISHED_VALID_COUNT",
    "DistanceBand",
    # Functions
    "is_valid",
    "valid_mask",
    "vw_params",
    "footprint",
    "wedge_polygon",
    "onscreen_part",
    "offscreen_part",
    "viewing_angle_deg",
    "distance_band",
    "published_grid",
    "load_grid",
    "dump_grid",
    "enumerate_grid",
    "compare_with_published",
]
