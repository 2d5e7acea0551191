import math

import numpy as np
from loguru import logger

from core.domain.cost import CostContext, cost_many
from core.domain.errors import DomainError
from core.domain.geometry import valid_mask

from .value import ConstraintSet, Landscape

DEFAULT_RESOLUTION = 200


def grid_landscape(
    ctx: CostContext,
    cons: ConstraintSet,
    resolution: int | tuple[int, int] = DEFAULT_RESOLUTION,
    theta_range: tuple[float, float] | None = None,
    leg_range: tuple[float, float] | None = None,
    dist: float | None = None,
) -> Landscape:
    """
    Dense UOW slice of the penalized objective over (theta, leg).

    Cells outside the domain or violating g1/g2 are flagged infeasible and
    never chosen as the minimum; on feasible cells the penalty is zero.
    """
    n_theta, n_leg = (resolution, resolution) if isinstance(resolution, int) else resolution
    if n_theta < 2 or n_leg < 2:
        raise DomainError(f"landscape resolution must be >= 2 per axis, got {resolution!r}")

    m = cons.margin
    d = ctx.d_poi if dist is None else dist
    t_lo, t_hi = theta_range or (m, math.pi - m)
    l_lo, l_hi = leg_range or (m, cons.leg_upper(ctx.d_poi))
    thetas = np.linspace(t_lo, t_hi, n_theta)
    legs = np.linspace(l_lo, l_hi, n_leg)

    tt, ll = np.meshgrid(thetas, legs, indexing="ij")
    x = np.column_stack([tt.ravel(), ll.ravel(), np.full(tt.size, d)])
    valid = valid_mask(x)
    g1 = x[:, 1] * np.cos(x[:, 0] / 2) - x[:, 2] - cons.drawable.max_width
    g2 = 2.0 * x[:, 1] * np.sin(x[:, 0] / 2) - cons.drawable.max_height
    feasible = valid & (g1 <= 0) & (g2 <= 0)

    objective = np.full(len(x), np.nan)
    if feasible.any():
        objective[feasible] = cost_many(ctx, x[feasible])

    argmin = None
    if feasible.any():
        flat = int(np.argmin(np.where(feasible, objective, np.inf)))
        argmin = (flat // n_leg, flat % n_leg)

    logger.bind(d_poi=ctx.d_poi, mode="UOW").debug(
        f"Landscape {n_theta}x{n_leg}: {int(feasible.sum())} feasible cells"
    )
    return Landscape(
        mode="UOW",
        d_poi=ctx.d_poi,
        dist=float(d),
        thetas=thetas,
        legs=legs,
        objective=objective.reshape(n_theta, n_leg),
        feasible=feasible.reshape(n_theta, n_leg),
        argmin=argmin,
    )


__all__ = ["DEFAULT_RESOLUTION", "grid_landscape"]
