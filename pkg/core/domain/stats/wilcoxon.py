import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np
from scipy import stats

from core.domain.errors import DegenerateSampleError, DomainError

Method = Literal["exact", "normal-approx"]

EXACT_THRESHOLD = 20


@dataclass(frozen=True, eq=True)
class PairedSample:
    """Per-subject differences A - B of one comparison."""

    labels: tuple[str, str]
    differences: tuple[float, ...]

    def __post_init__(self):
        diffs = tuple(float(v) for v in self.differences)
        object.__setattr__(self, "differences", diffs)
        if not diffs:
            raise DomainError("PairedSample needs at least one difference")
        if not all(math.isfinite(v) for v in diffs):
            raise DomainError("PairedSample differences must be finite")

    @classmethod
    def from_pairs(
        cls, a: Sequence[float], b: Sequence[float], labels: tuple[str, str] = ("A", "B")
    ) -> "PairedSample":
        if len(a) != len(b):
            raise DomainError(f"paired samples differ in length: {len(a)} vs {len(b)}")
        return cls(labels=labels, differences=tuple(x - y for x, y in zip(a, b)))


@dataclass(frozen=True, eq=True)
class TestResult:
    statistic: float  # min(W+, W-)
    p_value: float
    p_adjusted: float
    method: Method
    n_effective: int
    w_plus: float
    w_minus: float

    __test__ = False  # not a pytest class


def bonferroni(p: float, m: int) -> float:
    """min(1, m * p)."""
    if m < 1:
        raise DomainError(f"Bonferroni family size must be >= 1, got {m}")
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must be in [0, 1], got {p!r}")
    return min(1.0, m * p)


def _exact_p(doubled_ranks: np.ndarray, doubled_w_plus: int) -> float:
    """Two-sided p of W+ by convolving the rank sign distribution."""
    total = int(doubled_ranks.sum())
    counts = np.zeros(total + 1)
    counts[0] = 1.0
    for r in doubled_ranks:
        shifted = np.zeros_like(counts)
        shifted[r:] = counts[: total + 1 - r]
        counts = counts + shifted
    probs = counts / counts.sum()
    lower = probs[: doubled_w_plus + 1].sum()
    upper = probs[doubled_w_plus:].sum()
    return float(min(1.0, 2.0 * min(lower, upper)))


def _approx_p(ranks: np.ndarray, w_plus: float) -> float:
    n = len(ranks)
    mean = n * (n + 1) / 4.0
    _, tie_sizes = np.unique(ranks, return_counts=True)
    var = n * (n + 1) * (2 * n + 1) / 24.0 - np.sum(tie_sizes**3 - tie_sizes) / 48.0
    if var <= 0:
        return 1.0
    z = max(abs(w_plus - mean) - 0.5, 0.0) / math.sqrt(var)
    return float(min(1.0, 2.0 * stats.norm.sf(z)))


def wilcoxon_signed_rank(
    sample: PairedSample,
    m: int = 1,
    method: Literal["auto", "exact", "approx"] = "auto",
    exact_threshold: int = EXACT_THRESHOLD,
) -> TestResult:
    """
    Two-sided Wilcoxon signed-rank test with zero differences dropped.

    Ties get midranks. Exact null distribution up to `exact_threshold`
    nonzero differences, normal approximation with tie and continuity
    correction above it. p_adjusted is Bonferroni over m comparisons.
    """
    d = np.asarray(sample.differences, dtype=float)
    d = d[d != 0.0]
    if d.size == 0:
        raise DegenerateSampleError(f"all differences are zero for {sample.labels}")

    ranks = stats.rankdata(np.abs(d))  # midranks
    w_plus = float(ranks[d > 0].sum())
    w_minus = float(ranks[d < 0].sum())

    use_exact = method == "exact" or (method == "auto" and d.size <= exact_threshold)
    if use_exact:
        doubled = np.rint(2 * ranks).astype(int)
        p = _exact_p(doubled, int(round(2 * w_plus)))
        tag: Method = "exact"
    else:
        p = _approx_p(ranks, w_plus)
        tag = "normal-approx"

    return TestResult(
        statistic=min(w_plus, w_minus),
        p_value=p,
        p_adjusted=bonferroni(p, m),
        method=tag,
        n_effective=int(d.size),
        w_plus=w_plus,
        w_minus=w_minus,
    )


__all__ = [
    "Method",
    "EXACT_THRESHOLD",
    "PairedSample",
    "TestResult",
    "bonferroni",
    "wilcoxon_signed_rank",
]
