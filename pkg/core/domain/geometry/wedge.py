"""
Wedge shape helpers: the vanilla heuristic, footprint and polygon views.

All lengths are meters referenced to a 10 m viewing distance; a scale factor
rescales lengths linearly for other setups.
"""

import math
from typing import Literal

from shapely.geometry import Polygon, box

from core.domain.errors import DomainError

from .value import WedgeParams, Frame

# Constants of the vanilla heuristic; the logarithm is natural.
VW_LOG_OFFSET = 20.0
VW_LOG_DIVISOR = 12.0
VW_LOG_GAIN = 10.0
VW_ARC_BASE = 5.0
VW_ARC_SLOPE = 0.3

REFERENCE_VIEW_DISTANCE = 10.0

# Far half-plane extent used to clip polygons at the screen edge.
_CLIP_EXTENT = 1e6

DistanceBand = Literal["near", "medium", "far"]


def vw_params(d_poi: float, scale: float = 1.0) -> WedgeParams:
    """
    Vanilla wedge parameters for a POI at distance d_poi.

    l = d + ln((d + 20) / 12) * 10 and theta = (5 + 0.3 d) / l, so that
    theta * l = 5 + 0.3 d. With scale != 1 the heuristic runs at d_poi/scale
    and the leg is scaled back; theta is scale free.
    """
    if not (d_poi > 0 and math.isfinite(d_poi)):
        raise DomainError(f"d_poi must be positive, got {d_poi!r}")
    if not scale > 0:
        raise DomainError(f"scale must be positive, got {scale!r}")

    d_ref = d_poi / scale
    leg = d_ref + math.log((d_ref + VW_LOG_OFFSET) / VW_LOG_DIVISOR) * VW_LOG_GAIN
    theta = (VW_ARC_BASE + VW_ARC_SLOPE * d_ref) / leg
    return WedgeParams(theta=theta, leg=leg * scale, vertex_dist=d_poi)


def footprint(p: WedgeParams) -> tuple[float, float]:
    """On-screen bounding box (w, h) of the wedge."""
    if not isinstance(p, WedgeParams):
        raise DomainError(f"expected WedgeParams, got {type(p).__name__}")
    w = p.leg * math.cos(p.theta / 2) - p.vertex_dist
    h = 2 * p.leg * math.sin(p.theta / 2)
    return w, h


def wedge_polygon(p: WedgeParams) -> Polygon:
    upper, lower = Frame.base_endpoints(p)
    return Polygon([Frame.vertex(p), upper, lower])


def onscreen_part(p: WedgeParams) -> Polygon:
    """Portion of the wedge on the screen side of the edge (x <= 0)."""
    half_plane = box(-_CLIP_EXTENT, -_CLIP_EXTENT, Frame.SCREEN_EDGE_X, _CLIP_EXTENT)
    return wedge_polygon(p).intersection(half_plane)


def offscreen_part(p: WedgeParams) -> Polygon:
    half_plane = box(Frame.SCREEN_EDGE_X, -_CLIP_EXTENT, _CLIP_EXTENT, _CLIP_EXTENT)
    return wedge_polygon(p).intersection(half_plane)


def viewing_angle_deg(
    d_poi: float, view_distance: float = REFERENCE_VIEW_DISTANCE
) -> float:
    return math.degrees(math.atan2(d_poi, view_distance))


def distance_band(
    d_poi: float, view_distance: float = REFERENCE_VIEW_DISTANCE
) -> DistanceBand:
    """Near (<= 2 m), medium (<= 7 m) or far at the reference distance."""
    scale = view_distance / REFERENCE_VIEW_DISTANCE
    if d_poi <= 2.0 * scale:
        return "near"
    if d_poi <= 7.0 * scale:
        return "medium"
    return "far"


__all__ = [
    "REFERENCE_VIEW_DISTANCE",
    "DistanceBand",
    "vw_params",
    "footprint",
    "wedge_polygon",
    "onscreen_part",
    "offscreen_part",
    "viewing_angle_deg",
    "distance_band",
]
