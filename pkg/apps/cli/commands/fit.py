import argparse
from datetime import datetime, timezone
from pathlib import Path

from core.adapters.etl import SyntheticPipeline
from core.adapters.loaders import (
    read_factors,
    read_trials,
    write_cv_report,
    write_factors,
    write_holdout,
)
from core.adapters.stores import save_model

from ..options import prepare, provenance, report

NAME = "fit"
HELP = "extract factors from trials and fit the cognitive model"


def add_arguments(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--trials", type=Path, help="trials CSV (default: <out>/trials.csv)")
    src.add_argument("--factors", type=Path, help="factors CSV; skips extraction")
    p.add_argument("--family", choices=("gp", "poly"), help="model kept for b, sigma_x, sigma_y (default: gp)")
    p.add_argument("--stamp", action="store_true", help="record the fit date in the model metadata")


def run(args: argparse.Namespace) -> int:
    extra = {}
    if args.trials is not None:
        extra["paths"] = {"trials": str(args.trials)}
    if args.family is not None:
        extra["models"] = {"family": args.family}
    cfg = prepare(args, extra)
    pipeline = SyntheticPipeline(cfg)

    if args.factors is not None:
        factors = read_factors(args.factors)
    else:
        factors = pipeline.extract(read_trials(cfg.paths.trials_file))
        report("factors", cfg.paths.factors_file, write_factors(cfg.paths.factors_file, factors))

    stamp = datetime.now(timezone.utc).date().isoformat() if args.stamp else None
    fitted = pipeline.fit(factors, fit_date=stamp)

    reports = cfg.paths.reports_path
    report("cv_report", reports / "cv_report.csv", write_cv_report(reports / "cv_report.csv", fitted.cv_rows))
    report("holdout", reports / "holdout.csv", write_holdout(reports / "holdout.csv", fitted.holdout))
    report("model", save_model(fitted.model, cfg.paths.model_file))
    provenance(cfg)
    return 0
