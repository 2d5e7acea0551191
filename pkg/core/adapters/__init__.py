from .etl import SyntheticPipeline, pipeline_roundtrip
from .stores import load_model, save_model

__all__ = [
    "SyntheticPipeline",
    "pipeline_roundtrip",
    "load_model",
    "save_model",
]
