import argparse
import math
import sys
from pathlib import Path
from typing import Any

from loguru import logger

from core.config import RunConfig, deep_merge, dump_effective_config, load_config
from core.domain.geometry import WedgeParams
from core.infra.telemetry.logger import setup_loguru


class UsageError(Exception):
    """Bad command-line input; maps to exit code 2."""


class ConfigDumped(Exception):
    """--dump-config wrote the effective config; nothing else runs."""


class Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def common_options() -> argparse.ArgumentParser:
    """Flags shared by every subcommand; config-backed flags default to None."""
    parent = argparse.ArgumentParser(add_help=False)
    g = parent.add_argument_group("run options")
    g.add_argument("--config", type=Path, help="JSON run config (every field optional)")
    g.add_argument("--seed", type=int, help="master seed (default: 0)")
    g.add_argument("--out", type=Path, help="output directory (default: out)")
    g.add_argument(
        "--view-distance",
        type=float,
        help="viewing distance in m; lengths scale by view_distance/10 (default: 10)",
    )
    g.add_argument("--workers", type=int, help="worker threads (default: 1)")
    g.add_argument("--log-level", help="loguru level (default: INFO)")
    g.add_argument("--log-sink", choices=("json", "text"), help="log format on stderr (default: text)")
    g.add_argument(
        "--dump-config",
        action="store_true",
        help="write the effective config to <out>/effective_config.json and exit",
    )
    return parent


def overrides(args: argparse.Namespace) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for name in ("seed", "workers", "log_level", "log_sink"):
        value = getattr(args, name, None)
        if value is not None:
            out[name] = value
    if args.out is not None:
        out["paths"] = {"out_dir": str(args.out)}
    if args.view_distance is not None:
        out["geometry"] = {"view_distance": args.view_distance}
    return out


def prepare(args: argparse.Namespace, extra: dict[str, Any] | None = None) -> RunConfig:
    """
    Effective config for a command: logging set up, hash printed.

    `extra` holds command-specific overrides in config shape.
    """
    cfg = load_config(args.config, deep_merge(overrides(args), extra or {}))
    setup_loguru(
        service="wedgeopt",
        level=cfg.log_level,
        sink=cfg.log_sink,
        stream=sys.stderr,
    )
    print(f"config_hash={cfg.config_hash()}")
    logger.bind(command=args.command, config_hash=cfg.config_hash()).info("Command started")
    if getattr(args, "dump_config", False):
        report("config", provenance(cfg))
        raise ConfigDumped()
    return cfg


def provenance(cfg: RunConfig) -> Path:
    return dump_effective_config(cfg, cfg.paths.out_dir)


def report(name: str, path: Path, rows: int | None = None) -> None:
    suffix = f" rows={rows}" if rows is not None else ""
    print(f"{name}={path}{suffix}")


def parse_d_poi(text: str) -> list[float]:
    """'3', '1,2,5' or an inclusive unit-step range '1..11'."""
    try:
        if ".." in text:
            lo, hi = (float(v) for v in text.split("..", 1))
            if hi < lo:
                raise ValueError
            return [lo + k for k in range(int(math.floor(hi - lo + 1e-9)) + 1)]
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid POI distance list {text!r}") from None


def parse_params(text: str) -> WedgeParams:
    """'theta_rad,leg_m,dist_m'."""
    try:
        theta, leg, dist = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected THETA_RAD,LEG_M,DIST_M, got {text!r}"
        ) from None
    return WedgeParams(theta, leg, dist)


__all__ = [
    "UsageError",
    "ConfigDumped",
    "Parser",
    "common_options",
    "overrides",
    "prepare",
    "provenance",
    "report",
    "parse_d_poi",
    "parse_params",
]
