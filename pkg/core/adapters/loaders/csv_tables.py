"""
CSV readers and writers for every tabular artifact.

Floats are written with repr() so that a read-back reproduces them exactly.
Readers raise ParseError for malformed text and RecordValidationError for
well-formed rows whose values fall outside the domain.
"""

import csv
import math
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from core.domain.errors import DomainError, ParseError, RecordValidationError
from core.domain.geometry import GridEnumeration, WedgeParams
from core.domain.models import CvRow, HoldoutRow
from core.domain.optimize import Landscape, OptimizationResult
from core.domain.stats import ComparisonRow, WedgeScore
from core.domain.trials import CognitiveFactors, TrialRecord
from core.ports import RecoveryRow

GRID_HEADER = ("theta_rad", "leg_m", "dist_m", "valid")
TRIALS_HEADER = ("participant", "theta_rad", "leg_m", "dist_m", "est_x_m", "est_y_m", "rep")
FACTORS_HEADER = (
    "theta_rad", "leg_m", "dist_m", "b_m", "sigma_x_m", "sigma_y_m", "n_used", "n_removed",
)
CV_HEADER = ("target", "family", "order_or_hyper", "fold", "mse")
HOLDOUT_HEADER = ("target", "family", "label", "mse", "adj_r2")
RESULTS_HEADER = (
    "d_poi", "mode", "theta_rad", "leg_m", "dist_m", "cost_nats", "objective_nats",
    "g1", "g2", "iterations", "converged",
)
LANDSCAPE_HEADER = ("theta_rad", "leg_m", "cost_nats", "feasible")
EVALUATION_HEADER = ("d_poi", "comparison", "W", "p", "p_adj", "n_eff", "method", "rmse_a", "rmse_b")
SCORES_HEADER = ("d_poi", "mode", "n", "rmse_m", "empirical_cost_nats")
RECOVERY_HEADER = ("target", "max_abs_error", "mse")
ORACLE_HEADER = ("d_poi", "uow_objective_nats", "grid_min_nats", "gap_nats")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_rows(path: str | Path, header: Sequence[str], rows: Iterable[Sequence]) -> int:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    n = 0
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
            n += 1
    return n


def read_rows(path: str | Path, header: Sequence[str]) -> Iterator[tuple[int, dict[str, str]]]:
    """(1-based line number, raw row) for each data line after a checked header."""
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            first = next(reader)
        except StopIteration:
            raise ParseError(f"{path} is empty", line=1) from None
        if tuple(h.strip() for h in first) != tuple(header):
            raise ParseError(f"expected header {','.join(header)}, got {','.join(first)}", line=1)
        for values in reader:
            line = reader.line_num
            if not values:
                continue
            if len(values) != len(header):
                raise ParseError(
                    f"expected {len(header)} columns, got {len(values)}", line=line
                )
            yield line, dict(zip(header, values))


def _parse(model: type[BaseModel], line: int, raw: dict[str, str]):
    try:
        return model.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(p) for p in first["loc"])
        raise ParseError(f"column {field}: {first['msg']}", line=line) from e


class _Row(BaseModel):
    model_config = ConfigDict(extra="forbid", str_strip_whitespace=True)


class TrialRow(_Row):
    participant: str
    theta_rad: float
    leg_m: float
    dist_m: float
    est_x_m: float
    est_y_m: float
    rep: int


class FactorRow(_Row):
    theta_rad: float
    leg_m: float
    dist_m: float
    b_m: float
    sigma_x_m: float
    sigma_y_m: float
    n_used: int
    n_removed: int


class ResultRow(_Row):
    d_poi: float
    mode: str
    theta_rad: float
    leg_m: float
    dist_m: float
    cost_nats: float
    objective_nats: float
    g1: float
    g2: float
    iterations: int
    converged: bool


class LandscapeRow(_Row):
    theta_rad: float
    leg_m: float
    cost_nats: float | None
    feasible: bool

    @field_validator("cost_nats", mode="before")
    @classmethod
    def _blank_is_none(cls, v):
        return None if v == "" else v


def write_grid(path: str | Path, enumeration: GridEnumeration) -> int:
    return write_rows(
        path, GRID_HEADER, ((c.theta, c.leg, c.dist, c.valid) for c in enumeration.cells)
    )


def write_trials(path: str | Path, trials: Iterable[TrialRecord]) -> int:
    return write_rows(
        path,
        TRIALS_HEADER,
        (
            (t.participant_id, *t.params.as_tuple(), t.estimate_x, t.estimate_y, t.repetition)
            for t in trials
        ),
    )


def read_trials(path: str | Path) -> list[TrialRecord]:
    out = []
    for line, raw in read_rows(path, TRIALS_HEADER):
        row = _parse(TrialRow, line, raw)
        try:
            out.append(
                TrialRecord(
                    participant_id=row.participant,
                    params=WedgeParams(row.theta_rad, row.leg_m, row.dist_m),
                    estimate_x=row.est_x_m,
                    estimate_y=row.est_y_m,
                    repetition=row.rep,
                )
            )
        except DomainError as e:
            raise RecordValidationError(str(e), line=line, row=raw) from e
    return out


def write_factors(path: str | Path, factors: Iterable[CognitiveFactors]) -> int:
    return write_rows(
        path,
        FACTORS_HEADER,
        (
            (*f.params.as_tuple(), f.bias_b, f.sigma_x, f.sigma_y, f.n_used, f.n_removed)
            for f in factors
        ),
    )


def read_factors(path: str | Path) -> list[CognitiveFactors]:
    out = []
    for line, raw in read_rows(path, FACTORS_HEADER):
        row = _parse(FactorRow, line, raw)
        try:
            out.append(
                CognitiveFactors(
                    params=WedgeParams(row.theta_rad, row.leg_m, row.dist_m),
                    bias_b=row.b_m,
                    sigma_x=row.sigma_x_m,
                    sigma_y=row.sigma_y_m,
                    n_used=row.n_used,
                    n_removed=row.n_removed,
                )
            )
        except DomainError as e:
            raise RecordValidationError(str(e), line=line, row=raw) from e
    return out


def write_cv_report(path: str | Path, rows: Iterable[CvRow]) -> int:
    return write_rows(
        path, CV_HEADER, ((r.target, r.family, r.order_or_hyper, r.fold, r.mse) for r in rows)
    )


def write_holdout(path: str | Path, rows: Iterable[HoldoutRow]) -> int:
    return write_rows(
        path, HOLDOUT_HEADER, ((r.target, r.family, r.label, r.mse, r.adj_r2) for r in rows)
    )


def _result_row(r: OptimizationResult) -> tuple:
    return (
        r.d_poi,
        r.mode,
        *r.params.as_tuple(),
        r.pure_cost,
        r.objective,
        *r.constraint_values,
        r.iterations,
        r.converged,
    )


def write_results(path: str | Path, results: Iterable[OptimizationResult]) -> int:
    return write_rows(path, RESULTS_HEADER, (_result_row(r) for r in results))


def read_results(path: str | Path) -> list[ResultRow]:
    out = []
    for line, raw in read_rows(path, RESULTS_HEADER):
        row = _parse(ResultRow, line, raw)
        if row.mode not in ("VW", "UOW", "BOW"):
            raise RecordValidationError(f"unknown mode {row.mode!r}", line=line, row=raw)
        if not _is_wedge(row):
            raise RecordValidationError("wedge parameters outside domain", line=line, row=raw)
        out.append(row)
    return out


def _is_wedge(row: ResultRow) -> bool:
    try:
        WedgeParams(row.theta_rad, row.leg_m, row.dist_m)
    except DomainError:
        return False
    return True


def write_landscape(path: str | Path, landscape: Landscape) -> int:
    return write_rows(
        path,
        LANDSCAPE_HEADER,
        (
            (t, leg, None if math.isnan(c) else c, f)
            for t, leg, c, f in landscape.rows()
        ),
    )


def read_landscape(path: str | Path, d_poi: float | None, dist: float | None = None) -> Landscape:
    """
    Rebuild a landscape from its CSV; rows must form a full theta-major grid.

    The CSV holds no distance column, so the slice's d_poi (and dist, when it
    differs) come from the caller. dist defaults to d_poi.
    """
    dist = d_poi if dist is None else dist
    for name, value in (("d_poi", d_poi), ("dist", dist)):
        if value is None or not math.isfinite(value) or value <= 0:
            raise RecordValidationError(
                f"landscape {name} must be a positive distance, got {value!r}", line=1
            )
    rows = [_parse(LandscapeRow, line, raw) for line, raw in read_rows(path, LANDSCAPE_HEADER)]
    if not rows:
        raise ParseError(f"{path} has no landscape rows", line=2)
    thetas = np.array(sorted({r.theta_rad for r in rows}))
    legs = np.array(sorted({r.leg_m for r in rows}))
    if len(rows) != len(thetas) * len(legs):
        raise ParseError(
            f"{len(rows)} rows do not form a {len(thetas)}x{len(legs)} grid", line=len(rows) + 1
        )
    objective = np.full((len(thetas), len(legs)), np.nan)
    feasible = np.zeros_like(objective, dtype=bool)
    t_index = {v: i for i, v in enumerate(thetas)}
    l_index = {v: j for j, v in enumerate(legs)}
    for r in rows:
        i, j = t_index[r.theta_rad], l_index[r.leg_m]
        feasible[i, j] = r.feasible
        if r.cost_nats is not None:
            objective[i, j] = r.cost_nats
    argmin = None
    if feasible.any():
        flat = int(np.argmin(np.where(feasible, objective, np.inf)))
        argmin = (flat // len(legs), flat % len(legs))
    return Landscape(
        mode="UOW",
        d_poi=d_poi,
        dist=dist,
        thetas=thetas,
        legs=legs,
        objective=objective,
        feasible=feasible,
        argmin=argmin,
    )


def write_evaluation(path: str | Path, rows: Iterable[ComparisonRow]) -> int:
    return write_rows(
        path,
        EVALUATION_HEADER,
        (
            (
                r.d_poi, r.comparison, r.statistic, r.p_value, r.p_adjusted,
                r.n_effective, r.method, r.rmse_a, r.rmse_b,
            )
            for r in rows
        ),
    )


def write_scores(path: str | Path, scores: Iterable[WedgeScore]) -> int:
    return write_rows(
        path,
        SCORES_HEADER,
        ((s.d_poi, s.mode, s.n, s.rmse, s.empirical_cost) for s in scores),
    )


def write_recovery(path: str | Path, rows: Iterable[RecoveryRow]) -> int:
    return write_rows(path, RECOVERY_HEADER, ((r.target, r.max_abs_error, r.mse) for r in rows))


def write_oracle(path: str | Path, rows: Iterable[tuple[float, float, float]]) -> int:
    """Rows of (d_poi, UOW objective, dense-grid minimum); the gap is derived."""
    return write_rows(path, ORACLE_HEADER, ((d, obj, low, obj - low) for d, obj, low in rows))

__all__ = [
    "GRID_HEADER",
    "TRIALS_HEADER",
    "FACTORS_HEADER",
    "CV_HEADER",
    "HOLDOUT_HEADER",
    "RESULTS_HEADER",
    "LANDSCAPE_HEADER",
    "EVALUATION_HEADER",
    "SCORES_HEADER",
    "RECOVERY_HEADER",
    "ORACLE_HEADER",
    "ResultRow",
    "write_rows",
    "read_rows",
    "write_grid",
    "write_trials",
    "read_trials",
    "write_factors",
    "read_factors",
    "write_cv_report",
    "write_holdout",
    "write_results",
    "read_results",
    "write_landscape",
    "read_landscape",
    "write_evaluation",
    "write_scores",
    "write_recovery",
    "write_oracle",
]
