"""
Projected gradient descent on the penalized cognitive objective.

Steps follow the Barzilai-Borwein length with Armijo backtracking along the
projection arc, so every accepted step lowers the objective. The penalty
weight grows stage by stage until the drawable-area constraints hold.
"""

from dataclasses import dataclass
from functools import partial
from typing import Callable

import numpy as np
from loguru import logger

from core.domain.cost import DEFAULT_GRAD_REL_STEP, CostContext, cost_f, numeric_grad
from core.domain.errors import InfeasibleError
from core.domain.geometry import WedgeParams, is_valid, vw_params

from .landscape import grid_landscape
from .penalty import (
    constraint_values,
    feasible_start,
    penalized_objective,
    penalty,
    penalty_grad,
    project,
)
from .value import ConstraintSet, Mode, OptimizationResult

_ARMIJO = 1e-4
_MIN_STEP = 1e-20
_MAX_STEP = 1e12

_FREE = {
    "UOW": (0, 1),
    "BOW": (0, 1, 2),
}


@dataclass
class _Run:
    x: np.ndarray
    iterations: int
    converged: bool
    trace: list[float]
    stage_offsets: list[int]


def _phi(ctx: CostContext, cons: ConstraintSet, mu: float, x: np.ndarray) -> float:
    return cost_f(ctx, *x) + penalty(x, cons, mu)


def _grad(
    ctx: CostContext,
    cons: ConstraintSet,
    mu: float,
    coords: tuple[int, ...],
    rel_step: float,
    x: np.ndarray,
) -> np.ndarray:
    g = numeric_grad(lambda v: cost_f(ctx, *v), x, rel_step, coords)
    mask = np.zeros(3)
    mask[list(coords)] = 1.0
    return g + mask * penalty_grad(x, cons, mu)


def _minimize(
    phi: Callable[[np.ndarray], float],
    grad: Callable[[np.ndarray], np.ndarray],
    proj: Callable[[np.ndarray], np.ndarray],
    x0: np.ndarray,
    cons: ConstraintSet,
) -> tuple[np.ndarray, int, bool, list[float]]:
    x = x0
    f = phi(x)
    g = grad(x)
    trace = [f]
    alpha = 1.0 / max(float(np.linalg.norm(g)), 1.0)

    for it in range(cons.max_iter):
        if not np.any(g):
            return x, it, True, trace

        step = alpha
        while True:
            x_new = proj(x - step * g)
            s = x_new - x
            if np.linalg.norm(s) < cons.step_tol:
                return x, it, True, trace
            f_new = phi(x_new)
            if f_new <= f and f_new <= f + _ARMIJO * float(g @ s):
                break
            step *= 0.5
            if step < _MIN_STEP:
                return x, it, True, trace

        g_new = grad(x_new)
        sy = float(s @ (g_new - g))
        alpha = float(s @ s) / sy if sy > 0 else min(2.0 * step, _MAX_STEP)
        alpha = min(max(alpha, _MIN_STEP), _MAX_STEP)

        df = f - f_new
        x, f, g = x_new, f_new, g_new
        trace.append(f)
        if df < cons.f_tol:
            return x, it + 1, True, trace

    return x, cons.max_iter, False, trace


def _descend(
    ctx: CostContext,
    cons: ConstraintSet,
    mode: Mode,
    x0: np.ndarray,
    rel_step: float,
) -> _Run:
    coords = _FREE[mode]
    proj = partial(project, mode=mode, cons=cons, d_poi=ctx.d_poi)
    run = _Run(x=np.asarray(x0, dtype=float), iterations=0, converged=False, trace=[], stage_offsets=[])
    log = logger.bind(mode=mode, d_poi=ctx.d_poi)

    for stage, mu in enumerate(cons.stage_weights()):
        run.stage_offsets.append(len(run.trace))
        run.x, iters, run.converged, trace = _minimize(
            partial(_phi, ctx, cons, mu),
            partial(_grad, ctx, cons, mu, coords, rel_step),
            proj,
            run.x,
            cons,
        )
        run.iterations += iters
        run.trace.extend(trace)
        g = constraint_values(run.x, cons.drawable)
        log.bind(stage=stage).debug(
            f"mu={mu:g} iters={iters} f={trace[-1]:.6g} g1={g[0]:.3g} g2={g[1]:.3g}"
        )
        if np.all(g <= 0):
            break
    return run


def _result(
    ctx: CostContext,
    cons: ConstraintSet,
    mode: Mode,
    x: np.ndarray,
    run: _Run | None,
) -> OptimizationResult:
    params = WedgeParams(*(float(v) for v in x))
    g = constraint_values(x, cons.drawable)
    objective = penalized_objective(ctx, cons, params)
    feasible = bool(np.all(g <= cons.feasibility_tol))
    return OptimizationResult(
        mode=mode,
        d_poi=ctx.d_poi,
        params=params,
        objective=objective,
        pure_cost=cost_f(ctx, *x),
        constraint_values=(float(g[0]), float(g[1])),
        iterations=run.iterations if run else 0,
        converged=(run.converged if run else True) and feasible,
        trace=tuple(run.trace) if run else (objective,),
        stage_offsets=tuple(run.stage_offsets) if run else (0,),
    )


def _best(
    ctx: CostContext,
    cons: ConstraintSet,
    mode: Mode,
    runs: list[_Run],
    seeds: list[np.ndarray],
) -> OptimizationResult:
    """
    Lowest terminal-weight objective among descent ends and valid seeds.

    seeds[i] started runs[i]; extra seeds report the first run.
    """
    candidates: list[tuple[np.ndarray, _Run]] = [(r.x, r) for r in runs]
    for i, seed in enumerate(seeds):
        if is_valid(*seed) and (mode == "BOW" or seed[2] == ctx.d_poi):
            candidates.append((seed, runs[i] if i < len(runs) else runs[0]))
    scores = [penalized_objective(ctx, cons, x) for x, _ in candidates]
    x, run = candidates[int(np.argmin(scores))]
    result = _result(ctx, cons, mode, x, run)
    logger.bind(mode=mode, d_poi=ctx.d_poi).info(
        f"theta={result.params.theta:.5f} leg={result.params.leg:.4f} "
        f"dist={result.params.vertex_dist:.4f} objective={result.objective:.6g} "
        f"iters={result.iterations} converged={result.converged}"
    )
    return result


def _seed_array(ctx: CostContext, seed: WedgeParams | None) -> np.ndarray:
    p = seed if seed is not None else vw_params(ctx.d_poi)
    return np.array(p.as_tuple(), dtype=float)


def _grid_start(ctx: CostContext, cons: ConstraintSet) -> np.ndarray | None:
    """Feasible argmin of the seed landscape, None when off or nothing is feasible."""
    if cons.seed_resolution == 0:
        return None
    best = grid_landscape(ctx, cons, cons.seed_resolution).argmin_params
    return None if best is None else np.array(best.as_tuple(), dtype=float)


def vw_result(
    ctx: CostContext, cons: ConstraintSet, seed: WedgeParams | None = None
) -> OptimizationResult:
    """The heuristic wedge scored like an optimization result (0 iterations)."""
    return _result(ctx, cons, "VW", _seed_array(ctx, seed), None)


def optimize_uow(
    ctx: CostContext,
    cons: ConstraintSet,
    seed: WedgeParams | None = None,
    rel_step: float = DEFAULT_GRAD_REL_STEP,
) -> OptimizationResult:
    """
    Minimize over (theta, leg) with dist pinned at d_poi.

    Multi-start: from the VW wedge (or `seed`) projected into the box and,
    if needed, moved inside the drawable area, and from the argmin of the
    seed landscape. The lowest terminal-weight objective wins; ties keep the
    VW start.
    """
    if not ctx.d_poi > 0:
        raise InfeasibleError(f"UOW needs d_poi > 0, got {ctx.d_poi!r}")
    raw = _seed_array(ctx, seed)
    raw[2] = ctx.d_poi
    starts = [feasible_start(raw, "UOW", cons, ctx.d_poi)]
    grid = _grid_start(ctx, cons)
    if grid is not None:
        starts.append(grid)
    runs = [_descend(ctx, cons, "UOW", s, rel_step) for s in starts]
    return _best(ctx, cons, "UOW", runs, [*starts, raw])


def optimize_bow(
    ctx: CostContext,
    cons: ConstraintSet,
    seed: WedgeParams | None = None,
    uow: OptimizationResult | None = None,
    rel_step: float = DEFAULT_GRAD_REL_STEP,
) -> OptimizationResult:
    """
    Minimize over (theta, leg, dist).

    Multi-start from the VW wedge and from the UOW solution (dist = d_poi);
    the better end point wins.
    """
    if uow is None:
        uow = optimize_uow(ctx, cons, seed, rel_step)
    seeds = [_seed_array(ctx, seed), np.array(uow.params.as_tuple(), dtype=float)]
    runs = [
        _descend(ctx, cons, "BOW", feasible_start(s, "BOW", cons, ctx.d_poi), rel_step)
        for s in seeds
    ]
    return _best(ctx, cons, "BOW", runs, seeds)


__all__ = [
    "vw_result",
    "optimize_uow",
    "optimize_bow",
]
