"""
wedgeopt command line.

Exit codes:
    0  success
    1  unexpected error
    2  usage error
    3  missing input file
    4  schema, parse, validation or model-version mismatch
    5  infeasible optimization
    6  numerical, fit or data-sufficiency failure

On failure one JSON record {"error", "message", "exit_code"} goes to stderr.
"""

import argparse
import json
import sys
from typing import Sequence

import numpy as np
from loguru import logger
from pydantic import ValidationError

from core.domain.errors import (
    DegenerateSampleError,
    DomainError,
    FitError,
    InfeasibleError,
    InsufficientDataError,
    ModelStateError,
    ModelVersionError,
    NumericalError,
    ParseError,
    PipelineStageError,
    RecordValidationError,
)

from .commands import COMMANDS
from .options import ConfigDumped, Parser, UsageError, common_options

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_USAGE = 2
EXIT_MISSING_FILE = 3
EXIT_SCHEMA = 4
EXIT_INFEASIBLE = 5
EXIT_NUMERICAL = 6

# First match wins.
EXIT_CODES: tuple[tuple[type[BaseException], int], ...] = (
    (UsageError, EXIT_USAGE),
    (FileNotFoundError, EXIT_MISSING_FILE),
    (ValidationError, EXIT_SCHEMA),
    (ParseError, EXIT_SCHEMA),
    (RecordValidationError, EXIT_SCHEMA),
    (ModelVersionError, EXIT_SCHEMA),
    (json.JSONDecodeError, EXIT_SCHEMA),
    (InfeasibleError, EXIT_INFEASIBLE),
    (NumericalError, EXIT_NUMERICAL),
    (FitError, EXIT_NUMERICAL),
    (InsufficientDataError, EXIT_NUMERICAL),
    (DegenerateSampleError, EXIT_NUMERICAL),
    (ModelStateError, EXIT_NUMERICAL),
    (DomainError, EXIT_SCHEMA),
    (np.linalg.LinAlgError, EXIT_NUMERICAL),
    (ArithmeticError, EXIT_NUMERICAL),
)


def exit_code(exc: BaseException) -> int:
    # stage errors take the code of what failed inside the stage
    if isinstance(exc, PipelineStageError) and exc.__cause__ is not None:
        return exit_code(exc.__cause__)
    for cls, code in EXIT_CODES:
        if isinstance(exc, cls):
            return code
    return EXIT_UNEXPECTED


def error_record(exc: BaseException) -> dict:
    return {"error": type(exc).__name__, "message": str(exc), "exit_code": exit_code(exc)}


def build_parser() -> argparse.ArgumentParser:
    parser = Parser(
        prog="wedgeopt",
        description="Cognitive-cost optimization of Wedge off-screen cues.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    parent = common_options()
    for cmd in COMMANDS:
        p = sub.add_parser(cmd.NAME, help=cmd.HELP, description=cmd.HELP, parents=[parent])
        cmd.add_arguments(p)
        p.set_defaults(handler=cmd.run)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except ConfigDumped:
        return EXIT_OK
    except Exception as e:
        record = error_record(e)
        if record["exit_code"] == EXIT_UNEXPECTED:
            logger.opt(exception=e).error("Unexpected error")
        else:
            logger.bind(exit_code=record["exit_code"]).error(str(e))
        sys.stderr.write(json.dumps(record) + "\n")
        return record["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
