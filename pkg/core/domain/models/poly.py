from dataclasses import dataclass
from typing import Sequence

import numpy as np
from loguru import logger
from sklearn.linear_model import Ridge
from sklearn.preprocessing import PolynomialFeatures

from core.domain.errors import DomainError, FitError, InsufficientDataError
from core.domain.trials import CognitiveFactors

from .features import Standardizer, Target, as_inputs, factors_to_xy, monomial_count
from .metrics import adjusted_r2, mse
from .validation import (
    DEFAULT_FOLDS,
    DEFAULT_TEST_FRACTION,
    CvRow,
    cv_splits,
    holdout_split,
)

DEFAULT_LAMBDA_GRID: tuple[float, ...] = (0.0, 1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0)
POLY_ORDERS: tuple[int, ...] = (1, 2, 3)


def _powers(order: int) -> np.ndarray:
    # monomial exponents without the bias column, in sklearn's ordering
    pf = PolynomialFeatures(degree=order, include_bias=False)
    pf.fit(np.zeros((1, 3)))
    return pf.powers_.astype(int)


def _expand(z: np.ndarray, powers: np.ndarray) -> np.ndarray:
    return np.prod(z[:, None, :] ** powers[None, :, :], axis=2)


@dataclass(frozen=True, eq=False)
class PolyModel:
    """
    Ridge-regularized polynomial over standardized (theta, leg, dist).

    weights = (intercept, *coef) over every monomial up to the order,
    cross terms included; the intercept is not penalized.
    """

    target: Target
    order: int
    ridge_lambda: float
    standardizer: Standardizer
    intercept: float
    coef: np.ndarray

    family = "poly"

    def __post_init__(self):
        if self.order not in POLY_ORDERS:
            raise DomainError(f"polynomial order must be one of {POLY_ORDERS}, got {self.order}")
        if self.ridge_lambda < 0:
            raise DomainError("ridge_lambda must be >= 0")
        if len(self.coef) != monomial_count(self.order) - 1:
            raise DomainError(
                f"order {self.order} needs {monomial_count(self.order)} weights, "
                f"got {len(self.coef) + 1}"
            )

    @property
    def weights(self) -> np.ndarray:
        return np.concatenate([[self.intercept], np.asarray(self.coef, dtype=float)])

    @property
    def label(self) -> str:
        return f"order={self.order},lambda={self.ridge_lambda:g}"

    def design(self, x: np.ndarray) -> np.ndarray:
        """Monomial features of raw inputs, without the intercept column."""
        return _expand(self.standardizer.transform(x), _powers(self.order))

    def predict_many(self, x: np.ndarray) -> np.ndarray:
        return self.intercept + self.design(as_inputs(x)) @ np.asarray(self.coef, dtype=float)

    def raw_linear_coefficients(self) -> tuple[float, np.ndarray]:
        """Order-1 weights mapped back to unstandardized (theta, leg, dist)."""
        if self.order != 1:
            raise DomainError("raw coefficients are only defined for order 1")
        coef = np.asarray(self.coef, dtype=float) / self.standardizer.scale
        return float(self.intercept - coef @ self.standardizer.mean), coef


def _fit_ridge(
    x: np.ndarray, y: np.ndarray, target: Target, order: int, lam: float
) -> PolyModel:
    std = Standardizer.fit(x)
    feats = _expand(std.transform(x), _powers(order))
    full = np.hstack([np.ones((len(feats), 1)), feats])
    if np.linalg.matrix_rank(full) < full.shape[1]:
        raise FitError(
            f"rank-deficient order-{order} design for {target} ({len(x)} rows)"
        )
    reg = Ridge(alpha=lam, fit_intercept=True).fit(feats, y)
    return PolyModel(
        target=target,
        order=order,
        ridge_lambda=float(lam),
        standardizer=std,
        intercept=float(reg.intercept_),
        coef=np.asarray(reg.coef_, dtype=float),
    )


def fit_poly_xy(
    x: np.ndarray,
    y: np.ndarray,
    target: Target,
    order: int,
    lambda_grid: Sequence[float] = DEFAULT_LAMBDA_GRID,
    folds: int = DEFAULT_FOLDS,
    seed: int = 0,
    cv_log: list[CvRow] | None = None,
) -> PolyModel:
    x = as_inputs(x)
    y = np.asarray(y, dtype=float).ravel()
    need = 2 * monomial_count(order)
    if len(x) < need:
        raise FitError(
            f"order-{order} fit of {target} needs at least {need} points, got {len(x)}"
        )
    if not lambda_grid:
        raise DomainError("lambda_grid must not be empty")

    best_lam, best_score = None, np.inf
    splits = cv_splits(len(x), folds, seed)
    for lam in lambda_grid:
        fold_mse = []
        for k, (tr, va) in enumerate(splits):
            try:
                model = _fit_ridge(x[tr], y[tr], target, order, lam)
            except FitError:
                fold_mse.append(np.inf)
                continue
            fold_mse.append(mse(y[va], model.predict_many(x[va])))
            if cv_log is not None:
                cv_log.append(
                    CvRow(target, "poly", f"order={order},lambda={lam:g}", k, fold_mse[-1])
                )
        score = float(np.mean(fold_mse))
        if score < best_score:
            best_lam, best_score = lam, score

    if best_lam is None:
        raise FitError(f"no finite CV score for order-{order} fit of {target}")

    model = _fit_ridge(x, y, target, order, best_lam)
    logger.bind(target=target, order=order).debug(
        f"Ridge lambda={best_lam:g} (cv mse={best_score:.6g})"
    )
    return model


def fit_poly(
    data: Sequence[CognitiveFactors],
    target: Target,
    order: int,
    lambda_grid: Sequence[float] = DEFAULT_LAMBDA_GRID,
    folds: int = DEFAULT_FOLDS,
    seed: int = 0,
    cv_log: list[CvRow] | None = None,
) -> PolyModel:
    """Ridge polynomial of one factor; lambda picked by k-fold CV MSE."""
    x, y = factors_to_xy(data, target)
    return fit_poly_xy(x, y, target, order, lambda_grid, folds, seed, cv_log)


def poly_order_scores(
    x: np.ndarray,
    y: np.ndarray,
    target: Target,
    orders: Sequence[int] = POLY_ORDERS,
    lambda_grid: Sequence[float] = DEFAULT_LAMBDA_GRID,
    folds: int = DEFAULT_FOLDS,
    test_fraction: float = DEFAULT_TEST_FRACTION,
    seed: int = 0,
    cv_log: list[CvRow] | None = None,
) -> list[tuple[PolyModel, float, float | None]]:
    """(model fitted on the train split, held-out MSE, held-out adjusted R^2) per order."""
    x = as_inputs(x)
    y = np.asarray(y, dtype=float).ravel()
    train, test = holdout_split(len(x), test_fraction, seed)

    scored = []
    for order in orders:
        try:
            model = fit_poly_xy(
                x[train], y[train], target, order, lambda_grid, folds, seed, cv_log
            )
        except (FitError, InsufficientDataError) as e:
            logger.bind(target=target, order=order).warning(f"Order skipped: {e}")
            continue
        pred = model.predict_many(x[test])
        try:
            adj = adjusted_r2(y[test], pred, monomial_count(order) - 1)
        except DomainError:
            adj = None
        scored.append((model, mse(y[test], pred), adj))
    return scored


def select_poly_order(
    data: Sequence[CognitiveFactors],
    target: Target,
    orders: Sequence[int] = POLY_ORDERS,
    lambda_grid: Sequence[float] = DEFAULT_LAMBDA_GRID,
    folds: int = DEFAULT_FOLDS,
    test_fraction: float = DEFAULT_TEST_FRACTION,
    seed: int = 0,
) -> PolyModel:
    """Order with the best held-out adjusted R^2 (MSE breaks undefined scores)."""
    x, y = factors_to_xy(data, target)
    scored = poly_order_scores(x, y, target, orders, lambda_grid, folds, test_fraction, seed)
    return best_poly(scored, target)


def best_poly(
    scored: Sequence[tuple[PolyModel, float, float | None]], target: str
) -> PolyModel:
    if not scored:
        raise FitError(f"no polynomial order could be fitted for {target}")
    with_adj = [s for s in scored if s[2] is not None]
    if with_adj:
        model = max(with_adj, key=lambda s: s[2])[0]
    else:
        model = min(scored, key=lambda s: s[1])[0]
    logger.bind(target=target).info(f"Selected polynomial {model.label}")
    return model


__all__ = [
    "DEFAULT_LAMBDA_GRID",
    "POLY_ORDERS",
    "PolyModel",
    "fit_poly",
    "fit_poly_xy",
    "poly_order_scores",
    "select_poly_order",
    "best_poly",
]
