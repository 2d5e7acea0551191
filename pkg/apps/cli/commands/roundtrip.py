import argparse
from pathlib import Path

from core.adapters.etl import SyntheticPipeline

from ..options import prepare, report

NAME = "roundtrip"
HELP = "simulate, fit, optimize and evaluate end to end on one seed"


def add_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", type=Path, help="latent field JSON (default: built-in field)")


def run(args: argparse.Namespace) -> int:
    cfg = prepare(args, {"synth": {"field": str(args.field)}} if args.field else None)
    result = SyntheticPipeline(cfg).run()

    for row in result.recovery:
        print(f"recovery.{row.target} max_abs_error={row.max_abs_error!r} mse={row.mse!r}")
    if result.oracle_gaps:
        print(f"oracle_gap_max={max(result.oracle_gaps.values())!r}")
    print(
        f"e1={sum(t.e1 for t in result.triples)} e2={sum(t.e2 for t in result.triples)} "
        f"removed={result.n_removed}"
    )
    for name, path in result.outputs.items():
        report(name, path)
    return 0
