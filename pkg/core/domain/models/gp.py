import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np
from loguru import logger
from scipy.linalg import LinAlgError, cho_factor, cho_solve
from scipy.spatial.distance import cdist

from core.domain.errors import DomainError, FitError, ModelStateError
from core.domain.trials import CognitiveFactors

from .features import N_INPUTS, Standardizer, Target, as_inputs, factors_to_xy
from .metrics import mse
from .validation import DEFAULT_FOLDS, CvRow, cv_splits

MIN_GP_POINTS = 10

_SQRT5 = math.sqrt(5.0)


def matern52(r: np.ndarray, amplitude: float = 1.0, length_scale: float = 1.0) -> np.ndarray:
    """Matern nu=5/2: amp * (1 + sqrt5 r/l + 5 r^2/(3 l^2)) * exp(-sqrt5 r/l)."""
    s = _SQRT5 * np.asarray(r, dtype=float) / length_scale
    return amplitude * (1.0 + s + s * s / 3.0) * np.exp(-s)


@dataclass(frozen=True, eq=True)
class GpHyperParams:
    """Kernel = Matern-5/2 + linear (offset + slope * <x, x'>), plus noise."""

    amplitude: float
    length_scale: tuple[float, ...]  # one shared value or one per input
    linear_offset: float
    linear_slope: float
    noise: float

    def __post_init__(self):
        ls = tuple(float(v) for v in np.atleast_1d(self.length_scale))
        object.__setattr__(self, "length_scale", ls)
        if len(ls) not in (1, N_INPUTS) or any(v <= 0 for v in ls):
            raise DomainError(f"length_scale must be 1 or {N_INPUTS} positive values")
        if self.amplitude <= 0:
            raise DomainError("amplitude must be > 0")
        if self.linear_offset < 0 or self.linear_slope < 0:
            raise DomainError("linear kernel variances must be >= 0")
        if self.noise <= 0:
            raise DomainError("noise variance must be > 0")

    @property
    def label(self) -> str:
        ls = "/".join(f"{v:g}" for v in self.length_scale)
        return (
            f"amp={self.amplitude:g},ls={ls},off={self.linear_offset:g},"
            f"slope={self.linear_slope:g},noise={self.noise:g}"
        )

    def kernel(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Cross-covariance of standardized inputs."""
        ls = np.asarray(self.length_scale)
        r = cdist(a / ls, b / ls)
        return matern52(r, self.amplitude) + self.linear_offset + self.linear_slope * (a @ b.T)


@dataclass(frozen=True)
class GpHyperGrid:
    amplitudes: tuple[float, ...] = (0.1, 1.0, 10.0)
    length_scales: tuple[float, ...] = (0.5, 1.0, 2.0)
    linear_offsets: tuple[float, ...] = (1.0,)
    linear_slopes: tuple[float, ...] = (0.1, 1.0)
    noises: tuple[float, ...] = (1e-6, 1e-4, 1e-2, 1e-1)
    ard: bool = False

    def candidates(self) -> Iterator[GpHyperParams]:
        if self.ard:
            scales = itertools.product(self.length_scales, repeat=N_INPUTS)
        else:
            scales = ((v,) for v in self.length_scales)
        for ls, amp, off, slope, noise in itertools.product(
            list(scales),
            self.amplitudes,
            self.linear_offsets,
            self.linear_slopes,
            self.noises,
        ):
            yield GpHyperParams(amp, ls, off, slope, noise)


@dataclass(frozen=True, eq=False)
class GpModel:
    """Zero-mean GP regressor with cached dual coefficients."""

    target: Target
    hyper: GpHyperParams
    standardizer: Standardizer
    x_train: np.ndarray  # standardized
    dual_coef: np.ndarray = field(repr=False)

    family = "gp"

    def __post_init__(self):
        if self.x_train is None or len(self.x_train) == 0:
            raise ModelStateError("GpModel has no training points")
        if len(self.dual_coef) != len(self.x_train):
            raise DomainError("dual coefficients do not match training inputs")

    @property
    def label(self) -> str:
        return self.hyper.label

    def predict_many(self, x: np.ndarray) -> np.ndarray:
        z = self.standardizer.transform(as_inputs(x))
        return self.hyper.kernel(z, self.x_train) @ self.dual_coef


def fit_gp_fixed(x: np.ndarray, y: np.ndarray, target: Target, hyper: GpHyperParams) -> GpModel:
    """Condition the GP on (x, y) with fixed hyperparameters."""
    x = as_inputs(x)
    y = np.asarray(y, dtype=float).ravel()
    if len(x) == 0:
        raise ModelStateError("GpModel has no training points")
    std = Standardizer.fit(x)
    z = std.transform(x)
    gram = hyper.kernel(z, z) + hyper.noise * np.eye(len(z))
    try:
        factor = cho_factor(gram, lower=True)
    except LinAlgError as e:
        raise FitError(f"kernel matrix is not positive definite ({hyper.label})") from e
    dual = cho_solve(factor, y)
    if not np.all(np.isfinite(dual)):
        raise FitError(f"non-finite dual coefficients ({hyper.label})")
    return GpModel(target=target, hyper=hyper, standardizer=std, x_train=z, dual_coef=dual)


def fit_gp_xy(
    x: np.ndarray,
    y: np.ndarray,
    target: Target,
    hyper_grid: GpHyperGrid | None = None,
    folds: int = DEFAULT_FOLDS,
    seed: int = 0,
    cv_log: list[CvRow] | None = None,
) -> GpModel:
    x = as_inputs(x)
    y = np.asarray(y, dtype=float).ravel()
    if len(x) < MIN_GP_POINTS:
        raise FitError(f"GP fit of {target} needs at least {MIN_GP_POINTS} points, got {len(x)}")
    grid = hyper_grid or GpHyperGrid()
    splits = cv_splits(len(x), folds, seed)

    best, best_score = None, np.inf
    for hyper in grid.candidates():
        fold_mse = []
        for k, (tr, va) in enumerate(splits):
            try:
                model = fit_gp_fixed(x[tr], y[tr], target, hyper)
            except FitError:
                break
            fold_mse.append(mse(y[va], model.predict_many(x[va])))
            if cv_log is not None:
                cv_log.append(CvRow(target, "gp", hyper.label, k, fold_mse[-1]))
        else:
            score = float(np.mean(fold_mse))
            if np.isfinite(score) and score < best_score:
                best, best_score = hyper, score

    if best is None:
        raise FitError(f"every GP hyperparameter candidate is indefinite for {target}")

    logger.bind(target=target).info(f"Selected GP {best.label} (cv mse={best_score:.6g})")
    return fit_gp_fixed(x, y, target, best)


def fit_gp(
    data: Sequence[CognitiveFactors],
    target: Target,
    hyper_grid: GpHyperGrid | None = None,
    folds: int = DEFAULT_FOLDS,
    seed: int = 0,
    cv_log: list[CvRow] | None = None,
) -> GpModel:
    """GP regressor of one factor; hyperparameters by mean k-fold validation MSE."""
    x, y = factors_to_xy(data, target)
    return fit_gp_xy(x, y, target, hyper_grid, folds, seed, cv_log)


__all__ = [
    "MIN_GP_POINTS",
    "matern52",
    "GpHyperParams",
    "GpHyperGrid",
    "GpModel",
    "fit_gp_fixed",
    "fit_gp_xy",
    "fit_gp",
]
