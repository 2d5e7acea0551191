import hashlib
import json
from functools import lru_cache
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from core.domain.errors import ParseError
from core.domain.geometry import (
    REFERENCE_VIEW_DISTANCE,
    DrawableArea,
    ParamGrid,
    load_grid,
)
from core.domain.geometry.grid import PUBLISHED_DIST_M, PUBLISHED_LEG_M, PUBLISHED_THETA_DEG
from core.domain.models import GpHyperGrid
from core.domain.optimize import ConstraintSet
from core.domain.synth import LatentField, ObserverConfig, load_field

EFFECTIVE_CONFIG_NAME = "effective_config.json"


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class PathsConfig(_Section):
    """Unset paths resolve under out_dir."""

    out_dir: Path = Path("out")
    trials: Path | None = None
    factors: Path | None = None
    models_dir: Path | None = None
    reports_dir: Path | None = None
    grid: Path | None = None  # JSON grid document; None means the published grid

    @property
    def trials_file(self) -> Path:
        return self.trials or self.out_dir / "trials.csv"

    @property
    def factors_file(self) -> Path:
        return self.factors or self.out_dir / "factors.csv"

    @property
    def models_path(self) -> Path:
        return self.models_dir or self.out_dir / "models"

    @property
    def reports_path(self) -> Path:
        return self.reports_dir or self.out_dir / "reports"

    @property
    def model_file(self) -> Path:
        return self.models_path / "model.json"


class GridConfig(_Section):
    theta_deg: list[float] = list(PUBLISHED_THETA_DEG)
    leg_m: list[float] = list(PUBLISHED_LEG_M)
    dist_m: list[float] = list(PUBLISHED_DIST_M)

    def to_grid(self) -> ParamGrid:
        return ParamGrid.from_degrees(self.theta_deg, self.leg_m, self.dist_m)


class GeometryConfig(_Section):
    max_width: float = Field(14.0, gt=0)
    max_height: float = Field(14.0, gt=0)
    view_distance: float = Field(REFERENCE_VIEW_DISTANCE, gt=0)

    @property
    def scale(self) -> float:
        return self.view_distance / REFERENCE_VIEW_DISTANCE

    def drawable(self) -> DrawableArea:
        return DrawableArea(self.max_width, self.max_height).scaled(self.scale)


class CostConfig(_Section):
    eps2_x: float = Field(0.1, gt=0)
    eps2_y: float = Field(0.1, gt=0)
    sigma_floor: float = Field(1e-3, gt=0)
    grad_rel_step: float = Field(1e-4, gt=0)

    @property
    def eps2(self) -> tuple[float, float]:
        return (self.eps2_x, self.eps2_y)


class OptimizerConfig(_Section):
    mu0: float = Field(1.0, gt=0)
    growth: float = Field(10.0, gt=1)
    max_stages: int = Field(8, ge=1)
    margin: float = Field(1e-4, gt=0)
    leg_max: float | None = None
    max_iter: int = Field(10_000, ge=1)
    f_tol: float = Field(1e-8, gt=0)
    step_tol: float = Field(1e-10, gt=0)
    feasibility_tol: float = Field(1e-6, gt=0)
    d_poi: list[float] = [float(v) for v in range(1, 12)]
    # dense-grid oracle and UOW seed grid share this resolution
    landscape_resolution: int = Field(200, ge=2)

    def constraints(self, drawable: DrawableArea) -> ConstraintSet:
        return ConstraintSet(
            drawable=drawable,
            mu0=self.mu0,
            growth=self.growth,
            max_stages=self.max_stages,
            margin=self.margin,
            leg_max=self.leg_max,
            max_iter=self.max_iter,
            f_tol=self.f_tol,
            step_tol=self.step_tol,
            feasibility_tol=self.feasibility_tol,
            seed_resolution=self.landscape_resolution,
        )


class ModelsConfig(_Section):
    family: Literal["gp", "poly"] = "gp"
    orders: list[int] = [1, 2, 3]
    lambda_grid: list[float] = [0.0, 1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0]
    gp_amplitudes: list[float] = [0.1, 1.0, 10.0]
    gp_length_scales: list[float] = [0.5, 1.0, 2.0]
    gp_linear_offsets: list[float] = [1.0]
    gp_linear_slopes: list[float] = [0.1, 1.0]
    gp_noises: list[float] = [1e-6, 1e-4, 1e-2, 1e-1]
    ard: bool = False
    folds: int = Field(5, ge=2)
    test_fraction: float = Field(0.2, gt=0, lt=1)

    @field_validator("orders")
    @classmethod
    def _orders_in_range(cls, v: list[int]) -> list[int]:
        if not v or any(o not in (1, 2, 3) for o in v):
            raise ValueError("orders must be a non-empty subset of {1, 2, 3}")
        return v

    def hyper_grid(self) -> GpHyperGrid:
        return GpHyperGrid(
            amplitudes=tuple(self.gp_amplitudes),
            length_scales=tuple(self.gp_length_scales),
            linear_offsets=tuple(self.gp_linear_offsets),
            linear_slopes=tuple(self.gp_linear_slopes),
            noises=tuple(self.gp_noises),
            ard=self.ard,
        )


class StatsConfig(_Section):
    alpha: float = Field(0.05, gt=0, lt=1)
    bonferroni_m: int = Field(3, ge=1)
    exact_threshold: int = Field(20, ge=1)


class SynthConfig(_Section):
    field: Path | None = None  # JSON latent-field document; None means built-in defaults
    participants: int = Field(20, ge=1)
    repetitions: int = Field(1, ge=1)
    eval_participants: int = Field(22, ge=1)
    eval_repetitions: int = Field(2, ge=1)
    outlier_rate: float = Field(0.02, ge=0, lt=1)
    outlier_box: float = Field(30.0, gt=0)

    def latent_field(self) -> LatentField:
        return load_field(self.field) if self.field is not None else LatentField()

    def observers(self, seed: int) -> ObserverConfig:
        return ObserverConfig(
            participants=self.participants,
            repetitions=self.repetitions,
            seed=seed,
            outlier_rate=self.outlier_rate,
            outlier_box=self.outlier_box,
        )

    def evaluators(self, seed: int) -> ObserverConfig:
        return ObserverConfig(
            participants=self.eval_participants,
            repetitions=self.eval_repetitions,
            seed=seed,
            outlier_rate=self.outlier_rate,
            outlier_box=self.outlier_box,
        )


class RunConfig(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="WEDGEOPT_",
        env_nested_delimiter="__",
        extra="forbid",
    )

    seed: int = 0
    workers: int = Field(1, ge=1)
    log_level: str = "INFO"
    log_sink: Literal["json", "text"] = "text"

    paths: PathsConfig = PathsConfig()
    grid: GridConfig = GridConfig()
    geometry: GeometryConfig = GeometryConfig()
    cost: CostConfig = CostConfig()
    optimizer: OptimizerConfig = OptimizerConfig()
    models: ModelsConfig = ModelsConfig()
    stats: StatsConfig = StatsConfig()
    synth: SynthConfig = SynthConfig()

    def param_grid(self) -> ParamGrid:
        grid = load_grid(self.paths.grid) if self.paths.grid is not None else self.grid.to_grid()
        return grid.scaled(self.geometry.scale) if self.geometry.scale != 1.0 else grid

    def constraints(self) -> ConstraintSet:
        return self.optimizer.constraints(self.geometry.drawable())

    def canonical_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))

    def config_hash(self) -> str:
        """First 12 hex digits of the SHA-256 of the canonical JSON."""
        return hashlib.sha256(self.canonical_json().encode("utf-8")).hexdigest()[:12]


def deep_merge(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    out = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = deep_merge(out[key], value)
        else:
            out[key] = value
    return out


def load_config(path: str | Path | None = None, overrides: dict[str, Any] | None = None) -> RunConfig:
    """
    Build the effective config.

    Precedence: overrides (CLI flags) > JSON file > WEDGEOPT_* environment >
    defaults. Missing files raise FileNotFoundError; bad content raises
    pydantic's ValidationError.
    """
    data: dict[str, Any] = {}
    if path is not None:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(data, dict):
            raise ParseError(f"config file {path} must hold a JSON object")
    return RunConfig(**deep_merge(data, overrides or {}))


def dump_effective_config(cfg: RunConfig, directory: str | Path) -> Path:
    path = Path(directory) / EFFECTIVE_CONFIG_NAME
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(cfg.model_dump(mode="json"), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return path


@lru_cache()
def get_settings() -> RunConfig:
    """Config from the environment and defaults only."""
    return RunConfig()


__all__ = [
    "EFFECTIVE_CONFIG_NAME",
    "PathsConfig",
    "GridConfig",
    "GeometryConfig",
    "CostConfig",
    "OptimizerConfig",
    "ModelsConfig",
    "StatsConfig",
    "SynthConfig",
    "RunConfig",
    "deep_merge",
    "load_config",
    "dump_effective_config",
    "get_settings",
]
