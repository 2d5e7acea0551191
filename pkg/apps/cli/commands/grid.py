import argparse
from pathlib import Path

from core.adapters.loaders import write_grid
from core.domain.geometry import compare_with_published, enumerate_grid, published_grid

from ..options import prepare, provenance, report

NAME = "grid"
HELP = "enumerate the parameter grid with its validity flags"


def add_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--grid",
        type=Path,
        help="JSON grid document (default: published 8 x 11 x 11 grid)",
    )


def run(args: argparse.Namespace) -> int:
    cfg = prepare(args, {"paths": {"grid": str(args.grid)}} if args.grid else None)
    grid = cfg.param_grid()
    result = enumerate_grid(grid)
    if grid == published_grid():
        compare_with_published(result)

    path = cfg.paths.out_dir / "grid.csv"
    report("grid", path, write_grid(path, result))
    print(f"valid={result.valid_count}")
    provenance(cfg)
    return 0
