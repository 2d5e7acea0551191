import argparse
from pathlib import Path

from core.adapters.loaders import write_landscape
from core.adapters.stores import load_model
from core.domain.cost import CostContext
from core.domain.optimize import grid_landscape

from ..options import prepare, provenance, report

NAME = "landscape"
HELP = "dense (theta, leg) grid of the penalized objective at one POI distance"


def add_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", type=Path, help="model JSON (default: <out>/models/model.json)")
    p.add_argument("--d-poi", type=float, required=True, help="POI distance in m")
    p.add_argument("--resolution", type=int, help="cells per axis (default: 200)")
    p.add_argument("--dist", type=float, help="vertex distance of the slice (default: d_poi)")
    p.add_argument("--output", type=Path, help="CSV path (default: <out>/landscape_d<d_poi>.csv)")


def run(args: argparse.Namespace) -> int:
    extra = {"optimizer": {"landscape_resolution": args.resolution}} if args.resolution else None
    cfg = prepare(args, extra)
    model = load_model(args.model or cfg.paths.model_file)
    ctx = CostContext(model=model, d_poi=args.d_poi, eps2=cfg.cost.eps2)
    land = grid_landscape(
        ctx, cfg.constraints(), cfg.optimizer.landscape_resolution, dist=args.dist
    )

    path = args.output or cfg.paths.out_dir / f"landscape_d{args.d_poi:g}.csv"
    report("landscape", path, write_landscape(path, land))
    best = land.argmin_params
    if best is not None:
        print(f"argmin={best.theta!r},{best.leg!r},{best.vertex_dist!r} objective={land.min_objective!r}")
    provenance(cfg)
    return 0
