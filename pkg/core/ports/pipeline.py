from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol, runtime_checkable

from core.domain.models import CognitiveModel, FitReport, HoldoutRow
from core.domain.optimize import WedgeTriple
from core.domain.stats import ComparisonRow, WedgeScore
from core.domain.trials import CognitiveFactors, TrialRecord


@dataclass(frozen=True)
class RecoveryRow:
    """Fitted factor against ground truth over the valid grid cells."""

    target: str
    max_abs_error: float
    mse: float


@dataclass
class RoundtripResult:
    """Result of an end-to-end synthetic run."""

    n_trials: int
    n_conditions: int
    n_removed: int
    recovery: list[RecoveryRow]
    holdout: list[HoldoutRow]
    triples: list[WedgeTriple]
    oracle_gaps: dict[float, float]  # UOW objective minus dense-grid minimum, per d_poi
    comparisons: list[ComparisonRow]
    scores: list[WedgeScore]
    outputs: dict[str, Path] = field(default_factory=dict)


@runtime_checkable
class RoundtripPipeline(Protocol):
    """
    Synthetic observers -> factors -> model -> optimized wedges -> evaluation.

    Each stage can run on its own; run() chains them and labels any failure
    with the stage it came from.
    """

    def run(self) -> RoundtripResult:
        """
        Run every stage and write the artifacts.

        Returns:
            RoundtripResult with recovery, optimizer and evaluation summaries
        """
        ...

    def simulate(self) -> list[TrialRecord]:
        """Sample trials of every valid grid cell."""
        ...

    def extract(self, trials: list[TrialRecord]) -> list[CognitiveFactors]:
        """Outlier-filtered factors per condition."""
        ...

    def fit(self, factors: list[CognitiveFactors]) -> FitReport:
        """Fit the cognitive model with its CV and held-out reports."""
        ...

    def optimize(self, model: CognitiveModel) -> list[WedgeTriple]:
        """VW, UOW and BOW for every configured POI distance."""
        ...

    def evaluate(
        self, triples: list[WedgeTriple]
    ) -> tuple[list[ComparisonRow], list[WedgeScore]]:
        """Simulated second-experiment comparison of the three wedges."""
        ...
