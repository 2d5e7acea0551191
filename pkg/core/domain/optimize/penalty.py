import math
from typing import Sequence

import numpy as np

from core.domain.cost import CostContext, cost_f
from core.domain.errors import InfeasibleError
from core.domain.geometry import DrawableArea, WedgeParams, is_valid

from .value import ConstraintSet, Mode


def constraint_values(x: Sequence[float], drawable: DrawableArea) -> np.ndarray:
    """(g1, g2); a wedge fits the drawable area when both are <= 0."""
    theta, leg, dist = x
    return np.array(
        [
            leg * math.cos(theta / 2) - dist - drawable.max_width,
            2.0 * leg * math.sin(theta / 2) - drawable.max_height,
        ]
    )


def constraint_jacobian(x: Sequence[float]) -> np.ndarray:
    """Rows d g1 / d(theta, leg, dist) and d g2 / d(theta, leg, dist)."""
    theta, leg, _ = x
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [
            [-0.5 * leg * s, c, -1.0],
            [leg * c, 2.0 * s, 0.0],
        ]
    )


def penalty(x: Sequence[float], cons: ConstraintSet, mu: float) -> float:
    viol = np.maximum(constraint_values(x, cons.drawable), 0.0)
    return float(mu * np.sum(viol**2))


def penalty_grad(x: Sequence[float], cons: ConstraintSet, mu: float) -> np.ndarray:
    viol = np.maximum(constraint_values(x, cons.drawable), 0.0)
    return 2.0 * mu * viol @ constraint_jacobian(x)


def penalized_objective(
    ctx: CostContext,
    cons: ConstraintSet,
    params: WedgeParams | Sequence[float],
    mu: float | None = None,
) -> float:
    """f + mu * sum(max(0, g_i)^2); mu defaults to the terminal weight."""
    x = params.as_tuple() if isinstance(params, WedgeParams) else tuple(params)
    weight = cons.mu_max if mu is None else mu
    return cost_f(ctx, *x) + penalty(x, cons, weight)


def project(x: Sequence[float], mode: Mode, cons: ConstraintSet, d_poi: float) -> np.ndarray:
    """
    Clip into the margin-shrunk domain box.

    theta in [m, pi - m] and leg in [m, l_max]. UOW pins dist to d_poi and
    raises leg to keep l*cos(theta/2) >= d + m; BOW clips dist to
    [m, l*cos(theta/2) - m].
    """
    m = cons.margin
    l_max = cons.leg_upper(d_poi)
    theta = min(max(float(x[0]), m), math.pi - m)
    leg = min(max(float(x[1]), m), l_max)

    if mode == "UOW":
        dist = d_poi
        if dist + m >= l_max:
            raise InfeasibleError(f"leg cap {l_max:g} cannot reach d_poi={d_poi:g}")
        if (dist + m) / math.cos(theta / 2) > l_max:
            theta = min(theta, 2.0 * math.acos((dist + m) / l_max))
        leg = min(max(leg, (dist + m) / math.cos(theta / 2)), l_max)
    else:
        dist = float(x[2])
        leg = min(max(leg, 3.0 * m / math.cos(theta / 2)), l_max)
        dist = min(max(dist, m), leg * math.cos(theta / 2) - m)

    out = np.array([theta, leg, dist])
    if not is_valid(*out):
        raise InfeasibleError(f"projection left the domain at {tuple(out)}")
    return out


def feasible_start(x: Sequence[float], mode: Mode, cons: ConstraintSet, d_poi: float) -> np.ndarray:
    """
    Move a projected point inside both drawable-area constraints.

    Keeps theta where possible and shortens the legs; theta is capped so that
    the domain lower bound on leg still fits under g2.
    """
    p = project(x, mode, cons, d_poi)
    if np.all(constraint_values(p, cons.drawable) <= 0):
        return p

    m = cons.margin
    w, h = cons.drawable.max_width, cons.drawable.max_height
    theta, leg, dist = p
    theta = min(theta, 2.0 * math.atan(h / (2.0 * (dist + m))))
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    leg = min(leg, (w + dist) / c, h / (2.0 * s))
    leg = max(leg, (dist + m) / c)
    q = project((theta, leg, dist), mode, cons, d_poi)
    if np.any(constraint_values(q, cons.drawable) > cons.feasibility_tol):
        raise InfeasibleError(
            f"no feasible start for {mode} at d_poi={d_poi:g} "
            f"(W={w:g}, H={h:g}, l_max={cons.leg_upper(d_poi):g})"
        )
    return q


__all__ = [
    "constraint_values",
    "constraint_jacobian",
    "penalty",
    "penalty_grad",
    "penalized_objective",
    "project",
    "feasible_start",
]
