from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Literal, Sequence

import numpy as np
from loguru import logger

from core.domain.errors import DomainError, ModelStateError
from core.domain.trials import CognitiveFactors

from .features import SIGMA_TARGETS, TARGETS, Target, as_inputs, data_hash, factors_to_xy
from .gp import GpHyperGrid, fit_gp_xy
from .metrics import adjusted_r2, mse
from .poly import DEFAULT_LAMBDA_GRID, POLY_ORDERS, best_poly, poly_order_scores
from .validation import (
    DEFAULT_FOLDS,
    DEFAULT_TEST_FRACTION,
    CvRow,
    HoldoutRow,
    holdout_split,
)

if TYPE_CHECKING:
    from core.ports.regressor import FactorRegressor

DEFAULT_SIGMA_FLOOR = 1e-3

Family = Literal["gp", "poly"]


def _check_fitted(model: Any) -> FactorRegressor:
    if model is None or not callable(getattr(model, "predict_many", None)):
        raise ModelStateError("model is not fitted")
    return model


def predict(
    model: FactorRegressor,
    theta: float,
    leg: float,
    dist: float,
    sigma_floor: float = DEFAULT_SIGMA_FLOOR,
) -> float:
    """Point prediction of one factor; sigma targets are clamped at sigma_floor."""
    value = float(_check_fitted(model).predict_many(np.array([[theta, leg, dist]]))[0])
    if getattr(model, "target", None) in SIGMA_TARGETS:
        value = max(value, sigma_floor)
    return value


@dataclass(frozen=True, eq=False)
class CognitiveModel:
    """The three factor regressors b = f, sigma_x = g, sigma_y = h."""

    model_b: FactorRegressor
    model_sx: FactorRegressor
    model_sy: FactorRegressor
    sigma_floor: float = DEFAULT_SIGMA_FLOOR
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        for m in (self.model_b, self.model_sx, self.model_sy):
            _check_fitted(m)
        if not self.sigma_floor > 0:
            raise DomainError("sigma_floor must be > 0")

    def regressor(self, target: Target) -> FactorRegressor:
        return {"b": self.model_b, "sigma_x": self.model_sx, "sigma_y": self.model_sy}[target]

    def predict_many(self, x: np.ndarray) -> np.ndarray:
        """Columns (b, sigma_x, sigma_y) for every row of (theta, leg, dist)."""
        x = as_inputs(x)
        out = np.column_stack(
            [
                self.model_b.predict_many(x),
                self.model_sx.predict_many(x),
                self.model_sy.predict_many(x),
            ]
        ).astype(float)
        out[:, 1:] = np.maximum(out[:, 1:], self.sigma_floor)
        return out

    def predict_factors(self, theta: float, leg: float, dist: float) -> tuple[float, float, float]:
        b, sx, sy = self.predict_many(np.array([[theta, leg, dist]]))[0]
        return float(b), float(sx), float(sy)


@dataclass(frozen=True)
class FitReport:
    model: CognitiveModel
    cv_rows: list[CvRow]
    holdout: list[HoldoutRow]


def _fit_target(
    x: np.ndarray,
    y: np.ndarray,
    target: Target,
    family: Family,
    orders: Sequence[int],
    lambda_grid: Sequence[float],
    hyper_grid: GpHyperGrid | None,
    folds: int,
    test_fraction: float,
    seed: int,
) -> tuple[FactorRegressor, list[CvRow], list[HoldoutRow]]:
    cv_rows: list[CvRow] = []
    holdout: list[HoldoutRow] = []
    train, test = holdout_split(len(x), test_fraction, seed)

    scored = poly_order_scores(
        x, y, target, orders, lambda_grid, folds, test_fraction, seed, cv_rows
    )
    for model, err, adj in scored:
        holdout.append(HoldoutRow(target, "poly", model.label, err, adj))

    if family == "poly":
        return best_poly(scored, target), cv_rows, holdout

    gp = fit_gp_xy(x[train], y[train], target, hyper_grid, folds, seed, cv_rows)
    pred = gp.predict_many(x[test])
    try:
        # GP has no finite parameter count; scored against the three inputs
        adj = adjusted_r2(y[test], pred, 3)
    except DomainError:
        adj = None
    holdout.append(HoldoutRow(target, "gp", gp.label, mse(y[test], pred), adj))
    return gp, cv_rows, holdout


def fit_cognitive_model(
    factors: Sequence[CognitiveFactors],
    family: Family = "gp",
    orders: Sequence[int] = POLY_ORDERS,
    lambda_grid: Sequence[float] = DEFAULT_LAMBDA_GRID,
    hyper_grid: GpHyperGrid | None = None,
    folds: int = DEFAULT_FOLDS,
    test_fraction: float = DEFAULT_TEST_FRACTION,
    seed: int = 0,
    sigma_floor: float = DEFAULT_SIGMA_FLOOR,
    workers: int = 1,
    fit_date: str | None = None,
) -> FitReport:
    """
    Fit b, sigma_x and sigma_y on an 80/20 split.

    Polynomial orders are always scored on the held-out rows. The GP is
    fitted and scored only for family "gp", and is then the kept model.
    """
    if family not in ("gp", "poly"):
        raise DomainError(f"unknown model family {family!r}")

    def _one(target: Target):
        x, y = factors_to_xy(factors, target)
        return _fit_target(
            x, y, target, family, orders, lambda_grid, hyper_grid, folds, test_fraction, seed
        )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=min(workers, len(TARGETS))) as pool:
            results = list(pool.map(_one, TARGETS))
    else:
        results = [_one(t) for t in TARGETS]

    x, _ = factors_to_xy(factors, "b")
    ys = np.column_stack([factors_to_xy(factors, t)[1] for t in TARGETS])
    metadata: dict[str, Any] = {
        "family": family,
        "seed": seed,
        "n_conditions": len(factors),
        "data_hash": data_hash(x, ys),
        "holdout_mse": {
            t: next(r.mse for r in rows if r.family == family and r.label == chosen.label)
            for t, (chosen, _, rows) in zip(TARGETS, results)
        },
    }
    if fit_date is not None:
        metadata["fit_date"] = fit_date

    model = CognitiveModel(
        model_b=results[0][0],
        model_sx=results[1][0],
        model_sy=results[2][0],
        sigma_floor=sigma_floor,
        metadata=metadata,
    )
    logger.bind(family=family, n=len(factors)).info("Cognitive model fitted")
    return FitReport(
        model=model,
        cv_rows=[row for _, rows, _ in results for row in rows],
        holdout=[row for _, _, rows in results for row in rows],
    )


__all__ = [
    "DEFAULT_SIGMA_FLOOR",
    "Family",
    "predict",
    "CognitiveModel",
    "FitReport",
    "fit_cognitive_model",
]
