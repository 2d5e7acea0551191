"""
Cognitive cost f(theta, l, d) = KL(Q || P).

P is the model-predicted distribution of vertex estimates, Q the ideal
distribution centred on the POI.
"""

import math
from typing import Sequence

import numpy as np

from core.domain.errors import DegenerateSampleError, DomainError, NumericalError
from core.domain.geometry import is_valid, valid_mask
from core.domain.models import CognitiveModel

from .kl import kl_qp, kl_terms
from .value import DEFAULT_EPS2, CostContext, Gauss2Diag

DEFAULT_GRAD_REL_STEP = 1e-4

# Step halvings tried when neither side of a coordinate stays in the domain.
_MAX_STEP_HALVINGS = 30


def _require_valid(theta: float, leg: float, dist: float) -> None:
    if not is_valid(theta, leg, dist):
        raise DomainError(f"invalid wedge parameters ({theta!r}, {leg!r}, {dist!r})")


def predicted_p(model: CognitiveModel, theta: float, leg: float, dist: float) -> Gauss2Diag:
    """N((d + b, 0), diag(sigma_x^2, sigma_y^2)) with clamped sigmas."""
    _require_valid(theta, leg, dist)
    b, sx, sy = model.predict_factors(theta, leg, dist)
    return Gauss2Diag(mean_x=dist + b, mean_y=0.0, var_x=sx * sx, var_y=sy * sy)


def ideal_q(ctx: CostContext) -> Gauss2Diag:
    return Gauss2Diag(mean_x=ctx.d_poi, mean_y=0.0, var_x=ctx.eps2[0], var_y=ctx.eps2[1])


def cost_f(ctx: CostContext, theta: float, leg: float, dist: float) -> float:
    p = predicted_p(ctx.model, theta, leg, dist)
    value = kl_qp(ideal_q(ctx), p)
    if not math.isfinite(value):
        raise NumericalError("non-finite cognitive cost", (theta, leg, dist))
    return value


def cost_many(ctx: CostContext, x: np.ndarray) -> np.ndarray:
    """Cost of every row of (theta, leg, dist); all rows must be valid."""
    x = np.asarray(x, dtype=float).reshape(-1, 3)
    bad = ~valid_mask(x)
    if bad.any():
        raise DomainError(f"invalid wedge parameters at row {int(np.argmax(bad))}")
    factors = ctx.model.predict_many(x)
    var_x = factors[:, 1] ** 2
    var_y = factors[:, 2] ** 2
    cost = kl_terms(ctx.d_poi, ctx.eps2[0], x[:, 2] + factors[:, 0], var_x) + kl_terms(
        0.0, ctx.eps2[1], 0.0, var_y
    )
    return np.maximum(cost, 0.0)


def _partial(fn, x: np.ndarray, i: int, h: float) -> float:
    up, down = x.copy(), x.copy()
    for _ in range(_MAX_STEP_HALVINGS):
        up[i], down[i] = x[i] + h, x[i] - h
        up_ok, down_ok = is_valid(*up), is_valid(*down)
        if up_ok and down_ok:
            return (fn(up) - fn(down)) / (2.0 * h)
        if up_ok:
            return (fn(up) - fn(x)) / h
        if down_ok:
            return (fn(x) - fn(down)) / h
        h *= 0.5
    raise NumericalError(f"no admissible finite-difference step on coordinate {i}", tuple(x))


def numeric_grad(
    fn,
    params: Sequence[float],
    rel_step: float = DEFAULT_GRAD_REL_STEP,
    coords: Sequence[int] | None = None,
) -> np.ndarray:
    """
    Finite-difference gradient of fn over (theta, leg, dist).

    Central with step rel_step * |x_i|, one-sided where a side leaves the
    validity domain. Coordinates outside `coords` get a zero partial.
    """
    x = np.asarray(params, dtype=float)
    _require_valid(*x)
    grad = np.zeros_like(x)
    for i in range(len(x)) if coords is None else coords:
        h = rel_step * max(abs(x[i]), 1e-8)
        grad[i] = _partial(fn, x, i, h)
    if not np.all(np.isfinite(grad)):
        raise NumericalError("non-finite cost gradient", tuple(x))
    return grad


def cost_grad(
    ctx: CostContext,
    theta: float,
    leg: float,
    dist: float,
    rel_step: float = DEFAULT_GRAD_REL_STEP,
) -> np.ndarray:
    """Gradient (d/dtheta, d/dleg, d/ddist) of cost_f."""
    return numeric_grad(lambda v: cost_f(ctx, *v), (theta, leg, dist), rel_step)


def empirical_cost(
    estimates: Sequence[tuple[float, float]],
    d_poi: float,
    eps2: tuple[float, float] = DEFAULT_EPS2,
) -> float:
    """KL(Q || P^) with P^ the diagonal Gaussian fitted to observed estimates."""
    pts = np.asarray(estimates, dtype=float).reshape(-1, 2)
    if len(pts) < 2:
        raise DegenerateSampleError(f"empirical cost needs at least 2 estimates, got {len(pts)}")
    var = pts.var(axis=0, ddof=1)
    if np.any(var <= 0):
        raise DegenerateSampleError("estimates have zero spread along an axis")
    mean = pts.mean(axis=0)
    q = Gauss2Diag(mean_x=d_poi, mean_y=0.0, var_x=eps2[0], var_y=eps2[1])
    p = Gauss2Diag(mean_x=float(mean[0]), mean_y=float(mean[1]), var_x=float(var[0]), var_y=float(var[1]))
    return kl_qp(q, p)


__all__ = [
    "DEFAULT_GRAD_REL_STEP",
    "predicted_p",
    "ideal_q",
    "cost_f",
    "cost_many",
    "numeric_grad",
    "cost_grad",
    "empirical_cost",
]
