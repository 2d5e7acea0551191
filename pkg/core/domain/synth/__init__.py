from .field import (
    LatentField,
    FieldRegressor,
    FieldDocument,
    load_field,
    dump_field,
)
from .observers import (
    ObserverConfig,
    sample_condition,
    sample_trials,
    sample_estimates,
)

__all__ = [
    # Value Objects
    "LatentField",
    "FieldRegressor",
    "FieldDocument",
    "ObserverConfig",
    # Functions
    "load_field",
    "dump_field",
    "sample_condition",
    "sample_trials",
    "sample_estimates",
]
