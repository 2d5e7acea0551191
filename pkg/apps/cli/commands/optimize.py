import argparse
from pathlib import Path

from core.adapters.etl import SyntheticPipeline
from core.adapters.loaders import write_results
from core.adapters.stores import load_model

from ..options import parse_d_poi, prepare, provenance, report

NAME = "optimize"
HELP = "VW, UOW and BOW wedges for each POI distance"


def add_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", type=Path, help="model JSON (default: <out>/models/model.json)")
    p.add_argument(
        "--d-poi",
        type=parse_d_poi,
        help="POI distances in m: '3', '1,2,5' or '1..11' (default: 1..11)",
    )
    p.add_argument(
        "--mode",
        choices=("all", "vw", "uow", "bow"),
        default="all",
        help="wedges written to results.csv (default: all)",
    )


def run(args: argparse.Namespace) -> int:
    cfg = prepare(args, {"optimizer": {"d_poi": args.d_poi}} if args.d_poi else None)
    model = load_model(args.model or cfg.paths.model_file)
    triples = SyntheticPipeline(cfg).optimize(model)

    wanted = {"all": ("VW", "UOW", "BOW")}.get(args.mode, (args.mode.upper(),))
    results = [r for t in triples for r in t.results() if r.mode in wanted]
    path = cfg.paths.out_dir / "results.csv"
    report("results", path, write_results(path, results))
    print(f"e1={sum(t.e1 for t in triples)} e2={sum(t.e2 for t in triples)}")
    provenance(cfg)
    return 0
