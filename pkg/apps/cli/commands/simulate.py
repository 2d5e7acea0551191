import argparse
from pathlib import Path

from core.adapters.etl import SyntheticPipeline
from core.adapters.loaders import write_trials

from ..options import prepare, provenance, report

NAME = "simulate"
HELP = "sample synthetic first-experiment trials over the valid grid cells"


def add_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", type=Path, help="latent field JSON (default: built-in field)")
    p.add_argument("--participants", type=int, help="participants per condition (default: 20)")
    p.add_argument("--repetitions", type=int, help="repetitions per participant (default: 1)")


def run(args: argparse.Namespace) -> int:
    synth = {
        k: v
        for k, v in (
            ("field", str(args.field) if args.field else None),
            ("participants", args.participants),
            ("repetitions", args.repetitions),
        )
        if v is not None
    }
    cfg = prepare(args, {"synth": synth} if synth else None)
    trials = SyntheticPipeline(cfg).simulate()
    path = cfg.paths.trials_file
    report("trials", path, write_trials(path, trials))
    provenance(cfg)
    return 0
