from .synthetic_pipeline import (
    EVALUATION_KEY_OFFSET,
    ORACLE_TOL,
    Shown,
    observe_wedges,
    SyntheticPipeline,
    pipeline_roundtrip,
)

__all__ = [
    "EVALUATION_KEY_OFFSET",
    "ORACLE_TOL",
    "Shown",
    "observe_wedges",
    "SyntheticPipeline",
    "pipeline_roundtrip",
]
