import argparse
from pathlib import Path

from core.adapters.etl import SyntheticPipeline
from core.adapters.loaders import read_results, write_evaluation, write_scores
from core.domain.geometry import WedgeParams

from ..options import prepare, provenance, report

NAME = "evaluate"
HELP = "simulated second experiment: Wilcoxon comparisons of the optimized wedges"


def add_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("--results", type=Path, help="results CSV (default: <out>/results.csv)")
    p.add_argument("--field", type=Path, help="latent field JSON of the observers (default: built-in field)")


def run(args: argparse.Namespace) -> int:
    cfg = prepare(args, {"synth": {"field": str(args.field)}} if args.field else None)
    rows = read_results(args.results or cfg.paths.out_dir / "results.csv")
    shown = [(r.d_poi, r.mode, WedgeParams(r.theta_rad, r.leg_m, r.dist_m)) for r in rows]
    comparisons, scores = SyntheticPipeline(cfg).evaluate_shown(shown)

    out = cfg.paths.out_dir
    report("evaluation", out / "evaluation.csv", write_evaluation(out / "evaluation.csv", comparisons))
    report("scores", out / "scores.csv", write_scores(out / "scores.csv", scores))
    provenance(cfg)
    return 0
