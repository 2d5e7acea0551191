from dataclasses import dataclass
from typing import Literal, Mapping, Sequence

from loguru import logger

from core.domain.cost import DEFAULT_EPS2, empirical_cost
from core.domain.errors import DegenerateSampleError, DomainError

from .localization import localization_error, rmse
from .wilcoxon import EXACT_THRESHOLD, PairedSample, wilcoxon_signed_rank

COMPARISONS: tuple[tuple[str, str], ...] = (("VW", "UOW"), ("VW", "BOW"), ("UOW", "BOW"))
DEFAULT_FAMILY_SIZE = len(COMPARISONS)

Estimates = Mapping[tuple[float, str], Sequence[tuple[float, float]]]


@dataclass(frozen=True, eq=True)
class ComparisonRow:
    d_poi: float
    comparison: str
    statistic: float
    p_value: float
    p_adjusted: float
    n_effective: int
    method: str
    rmse_a: float
    rmse_b: float


@dataclass(frozen=True, eq=True)
class WedgeScore:
    """RMSE and measured cost of one wedge at one distance."""

    d_poi: float
    mode: str
    n: int
    rmse: float
    empirical_cost: float | None


def evaluate_wedges(
    estimates: Estimates,
    m: int = DEFAULT_FAMILY_SIZE,
    eps2: tuple[float, float] = DEFAULT_EPS2,
    method: Literal["auto", "exact", "approx"] = "auto",
    exact_threshold: int = EXACT_THRESHOLD,
) -> tuple[list[ComparisonRow], list[WedgeScore]]:
    """
    Paired comparisons of the wedges shown at each POI distance.

    `estimates[(d_poi, mode)]` lists one estimate per subject, subjects in the
    same order for every mode of a distance.
    """
    errors = {
        key: [localization_error(e, key[0]) for e in pts] for key, pts in estimates.items()
    }

    scores: list[WedgeScore] = []
    for (d_poi, mode), pts in sorted(estimates.items()):
        try:
            cost = empirical_cost(pts, d_poi, eps2)
        except DegenerateSampleError:
            cost = None
        scores.append(WedgeScore(d_poi, mode, len(pts), rmse(errors[(d_poi, mode)]), cost))

    rows: list[ComparisonRow] = []
    for d_poi in sorted({k[0] for k in estimates}):
        for a, b in COMPARISONS:
            if (d_poi, a) not in errors or (d_poi, b) not in errors:
                continue
            ea, eb = errors[(d_poi, a)], errors[(d_poi, b)]
            if len(ea) != len(eb):
                raise DomainError(
                    f"d_poi={d_poi:g}: {a} has {len(ea)} subjects, {b} has {len(eb)}"
                )
            sample = PairedSample.from_pairs(ea, eb, (a, b))
            try:
                res = wilcoxon_signed_rank(sample, m, method, exact_threshold)
            except DegenerateSampleError as e:
                logger.bind(d_poi=d_poi).warning(f"Comparison {a}/{b} skipped: {e}")
                continue
            rows.append(
                ComparisonRow(
                    d_poi=d_poi,
                    comparison=f"{a}/{b}",
                    statistic=res.statistic,
                    p_value=res.p_value,
                    p_adjusted=res.p_adjusted,
                    n_effective=res.n_effective,
                    method=res.method,
                    rmse_a=rmse(ea),
                    rmse_b=rmse(eb),
                )
            )

    logger.bind(comparisons=len(rows)).info("Wedge evaluation done")
    return rows, scores


__all__ = [
    "COMPARISONS",
    "DEFAULT_FAMILY_SIZE",
    "Estimates",
    "ComparisonRow",
    "WedgeScore",
    "evaluate_wedges",
]
