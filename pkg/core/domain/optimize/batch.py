from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

from loguru import logger

from core.domain.cost import DEFAULT_GRAD_REL_STEP, CostContext
from core.domain.errors import WedgeOptError, with_label
from core.domain.geometry import WedgeParams, vw_params

from .solver import optimize_bow, optimize_uow, vw_result
from .value import ConstraintSet, WedgeTriple

SeedFn = Callable[[float], WedgeParams]


def optimize_one(
    ctx: CostContext,
    cons: ConstraintSet,
    seed_fn: SeedFn = vw_params,
    rel_step: float = DEFAULT_GRAD_REL_STEP,
) -> WedgeTriple:
    seed = seed_fn(ctx.d_poi)
    uow = optimize_uow(ctx, cons, seed, rel_step)
    return WedgeTriple(
        d_poi=ctx.d_poi,
        vw=vw_result(ctx, cons, seed),
        uow=uow,
        bow=optimize_bow(ctx, cons, seed, uow, rel_step),
    )


def optimize_all(
    ctx: CostContext,
    d_pois: Sequence[float],
    cons: ConstraintSet,
    seed_fn: SeedFn = vw_params,
    rel_step: float = DEFAULT_GRAD_REL_STEP,
    workers: int = 1,
) -> list[WedgeTriple]:
    """
    VW, UOW and BOW for every POI distance, in input order.

    `ctx` is a template; its d_poi is replaced per distance. Errors keep
    their class and gain a `d_poi=...` label.
    """

    def _one(d_poi: float) -> WedgeTriple:
        try:
            return optimize_one(ctx.with_d_poi(float(d_poi)), cons, seed_fn, rel_step)
        except WedgeOptError as e:
            raise with_label(e, f"d_poi={d_poi:g}")

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            triples = list(pool.map(_one, d_pois))
    else:
        triples = [_one(d) for d in d_pois]

    logger.bind(distances=len(triples)).info(
        f"Optimized {len(triples)} distances; "
        f"E1 at {sum(t.e1 for t in triples)}, E2 at {sum(t.e2 for t in triples)}"
    )
    return triples


__all__ = ["SeedFn", "optimize_one", "optimize_all"]
