"""
SVG 1.1 renderings of wedges and cost landscapes.

Wedge drawings use the wedge frame (screen edge at x = 0, screen at x <= 0)
mapped to pixels by a uniform `px_per_m` scale with y pointing up; the scale
is declared on the root element as data-px-per-m.
"""

import math
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np
from shapely.affinity import affine_transform
from shapely.geometry import Point, box
from shapely.geometry.base import BaseGeometry

from core.domain.geometry import (
    DrawableArea,
    Frame,
    WedgeParams,
    footprint,
    offscreen_part,
    onscreen_part,
    wedge_polygon,
)
from core.domain.optimize import Landscape

DEFAULT_PX_PER_M = 20.0
PADDING_PX = 20.0

_FEASIBLE_LOW = np.array([68, 1, 84])
_FEASIBLE_HIGH = np.array([253, 231, 37])
_INFEASIBLE = "#bdbdbd"


def _points(geom: BaseGeometry) -> str:
    if geom.is_empty:
        return ""
    coords = list(geom.exterior.coords)[:-1]
    return " ".join(f"{x:.4f},{y:.4f}" for x, y in coords)


def _header(width: float, height: float, extra: str = "") -> str:
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.1f}" height="{height:.1f}" '
        f'viewBox="0 0 {width:.1f} {height:.1f}"{extra}>\n'
    )


def render_wedge_svg(
    p: WedgeParams,
    drawable: DrawableArea | None = None,
    d_poi: float | None = None,
    px_per_m: float = DEFAULT_PX_PER_M,
    title: str | None = None,
) -> str:
    """
    Wedge cue as displayed: screen edge, on-screen part solid, off-screen
    part dashed, invisible vertex and POI marked.
    """
    wedge = wedge_polygon(p)
    shapes = [wedge, Point(0.0, 0.0)]
    if drawable is not None:
        shapes.append(box(-drawable.max_width, -drawable.max_height / 2, 0.0, drawable.max_height / 2))
    if d_poi is not None:
        shapes.append(Point(d_poi, 0.0))
    minx = min(s.bounds[0] for s in shapes)
    miny = min(s.bounds[1] for s in shapes)
    maxx = max(s.bounds[2] for s in shapes)
    maxy = max(s.bounds[3] for s in shapes)

    s = px_per_m
    # world (x, y) -> pixels with y up
    matrix = [s, 0.0, 0.0, -s, PADDING_PX - s * minx, PADDING_PX + s * maxy]

    def px(g: BaseGeometry) -> BaseGeometry:
        return affine_transform(g, matrix)

    width = (maxx - minx) * s + 2 * PADDING_PX
    height = (maxy - miny) * s + 2 * PADDING_PX
    w, h = footprint(p)
    out = [
        _header(
            width,
            height,
            f' data-px-per-m="{s:g}" data-theta="{p.theta!r}" data-leg="{p.leg!r}" '
            f'data-dist="{p.vertex_dist!r}" data-footprint-w="{w!r}" data-footprint-h="{h!r}"',
        )
    ]
    if title:
        out.append(f"  <title>{escape(title)}</title>\n")

    if drawable is not None:
        area = px(box(-drawable.max_width, -drawable.max_height / 2, 0.0, drawable.max_height / 2))
        out.append(
            f'  <polygon id="drawable" points="{_points(area)}" fill="#f5f5f5" stroke="#9e9e9e" '
            'stroke-width="1"/>\n'
        )

    edge_top = px(Point(Frame.SCREEN_EDGE_X, maxy))
    edge_bottom = px(Point(Frame.SCREEN_EDGE_X, miny))
    out.append(
        f'  <line id="screen-edge" x1="{edge_top.x:.4f}" y1="{edge_top.y:.4f}" '
        f'x2="{edge_bottom.x:.4f}" y2="{edge_bottom.y:.4f}" stroke="#000" stroke-width="2"/>\n'
    )

    on = onscreen_part(p)
    if not on.is_empty:
        out.append(
            f'  <polygon id="onscreen" points="{_points(px(on))}" fill="#e53935" '
            'fill-opacity="0.6" stroke="#b71c1c" stroke-width="1.5"/>\n'
        )
    off = offscreen_part(p)
    if not off.is_empty:
        out.append(
            f'  <polygon id="offscreen" points="{_points(px(off))}" fill="none" '
            'stroke="#b71c1c" stroke-width="1" stroke-dasharray="6,4"/>\n'
        )
    out.append(
        f'  <polygon id="wedge" points="{_points(px(wedge))}" fill="none" stroke="none"/>\n'
    )

    vertex = px(Point(*Frame.vertex(p)))
    out.append(
        f'  <circle id="vertex" cx="{vertex.x:.4f}" cy="{vertex.y:.4f}" r="3" fill="#b71c1c"/>\n'
    )
    if d_poi is not None:
        poi = px(Point(d_poi, 0.0))
        out.append(
            f'  <circle id="poi" cx="{poi.x:.4f}" cy="{poi.y:.4f}" r="5" fill="none" '
            'stroke="#1e88e5" stroke-width="2"/>\n'
        )
    out.append("</svg>\n")
    return "".join(out)


def _color(t: float) -> str:
    r, g, b = (_FEASIBLE_LOW + (_FEASIBLE_HIGH - _FEASIBLE_LOW) * t).round().astype(int)
    return f"#{r:02x}{g:02x}{b:02x}"


def render_landscape_svg(landscape: Landscape, cell_px: float = 3.0, title: str | None = None) -> str:
    """
    Heatmap of a landscape: theta along x, leg along y (up), log-scaled cost.

    Infeasible cells are grey and the argmin is circled.
    """
    n_theta, n_leg = landscape.objective.shape
    width = n_theta * cell_px + 2 * PADDING_PX
    height = n_leg * cell_px + 2 * PADDING_PX

    values = np.where(landscape.feasible, landscape.objective, np.nan)
    logv = np.log10(np.maximum(values, 1e-12))
    finite = np.isfinite(logv)
    lo = float(logv[finite].min()) if finite.any() else 0.0
    hi = float(logv[finite].max()) if finite.any() else 1.0
    span = hi - lo if hi > lo else 1.0

    out = [
        _header(
            width,
            height,
            f' data-d-poi="{landscape.d_poi!r}" data-cell-px="{cell_px:g}" '
            f'data-log-min="{lo!r}" data-log-max="{hi!r}"',
        )
    ]
    if title:
        out.append(f"  <title>{escape(title)}</title>\n")
    out.append('  <g id="cells" shape-rendering="crispEdges">\n')
    for i in range(n_theta):
        for j in range(n_leg):
            x = PADDING_PX + i * cell_px
            y = PADDING_PX + (n_leg - 1 - j) * cell_px
            fill = _color((logv[i, j] - lo) / span) if finite[i, j] else _INFEASIBLE
            out.append(
                f'    <rect x="{x:.2f}" y="{y:.2f}" width="{cell_px:g}" height="{cell_px:g}" '
                f'fill="{fill}"/>\n'
            )
    out.append("  </g>\n")

    if landscape.argmin is not None:
        i, j = landscape.argmin
        cx = PADDING_PX + (i + 0.5) * cell_px
        cy = PADDING_PX + (n_leg - 1 - j + 0.5) * cell_px
        r = max(2.0 * cell_px, 4.0)
        out.append(
            f'  <circle id="argmin" cx="{cx:.2f}" cy="{cy:.2f}" r="{r:.2f}" fill="none" '
            f'stroke="#e53935" stroke-width="2" data-theta="{float(landscape.thetas[i])!r}" '
            f'data-leg="{float(landscape.legs[j])!r}"/>\n'
        )

    t0, t1 = math.degrees(landscape.thetas[0]), math.degrees(landscape.thetas[-1])
    out.append(
        f'  <text x="{PADDING_PX:.1f}" y="{height - 4:.1f}" font-size="10">'
        f"theta {t0:.1f}..{t1:.1f} deg, leg {landscape.legs[0]:.2f}..{landscape.legs[-1]:.2f} m"
        "</text>\n"
    )
    out.append("</svg>\n")
    return "".join(out)


def write_svg(path: str | Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


__all__ = [
    "DEFAULT_PX_PER_M",
    "render_wedge_svg",
    "render_landscape_svg",
    "write_svg",
]
