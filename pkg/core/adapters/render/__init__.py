from .svg import (
    DEFAULT_PX_PER_M,
    render_wedge_svg,
    render_landscape_svg,
    write_svg,
)

__all__ = [
    "DEFAULT_PX_PER_M",
    "render_wedge_svg",
    "render_landscape_svg",
    "write_svg",
]
