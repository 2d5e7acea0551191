import argparse
from pathlib import Path

from core.adapters.loaders import read_landscape
from core.adapters.render import DEFAULT_PX_PER_M, render_landscape_svg, render_wedge_svg, write_svg
from core.domain.geometry import vw_params

from ..options import UsageError, parse_params, prepare, provenance, report

NAME = "render"
HELP = "SVG of a wedge or of a landscape CSV"


def add_arguments(p: argparse.ArgumentParser) -> None:
    what = p.add_mutually_exclusive_group(required=True)
    what.add_argument("--params", type=parse_params, help="wedge as THETA_RAD,LEG_M,DIST_M")
    what.add_argument("--vw", type=float, metavar="D_POI", help="vanilla wedge for this POI distance")
    what.add_argument("--landscape", type=Path, help="landscape CSV to draw as a heatmap")
    p.add_argument(
        "--d-poi",
        type=float,
        help="POI distance to mark (default: --vw value); required with --landscape",
    )
    p.add_argument("--dist", type=float, help="vertex distance of a landscape slice (default: d_poi)")
    p.add_argument(
        "--px-per-m", type=float, default=DEFAULT_PX_PER_M, help=f"drawing scale (default: {DEFAULT_PX_PER_M:g})"
    )
    p.add_argument("--output", type=Path, help="SVG path (default: <out>/wedge.svg or landscape.svg)")


def run(args: argparse.Namespace) -> int:
    cfg = prepare(args)
    out = cfg.paths.out_dir
    if args.landscape is not None:
        if args.d_poi is None:
            raise UsageError("--landscape needs --d-poi")
        text = render_landscape_svg(read_landscape(args.landscape, args.d_poi, args.dist))
        path = args.output or out / "landscape.svg"
    else:
        d_poi = args.d_poi
        if args.vw is not None:
            params = vw_params(args.vw, cfg.geometry.scale)
            d_poi = args.vw if d_poi is None else d_poi
        else:
            params = args.params
        text = render_wedge_svg(params, cfg.geometry.drawable(), d_poi, args.px_per_m)
        path = args.output or out / "wedge.svg"

    report("svg", write_svg(path, text))
    provenance(cfg)
    return 0
