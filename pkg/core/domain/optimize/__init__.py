from .value import (
    Mode,
    MODES,
    ConstraintSet,
    OptimizationResult,
    Landscape,
    WedgeTriple,
)
from .penalty import (
    constraint_values,
    constraint_jacobian,
    penalty,
    penalty_grad,
    penalized_objective,
    project,
    feasible_start,
)
from .solver import vw_result, optimize_uow, optimize_bow
from .landscape import DEFAULT_RESOLUTION, grid_landscape
from .batch import SeedFn, optimize_one, optimize_all

__all__ = [
    # Value Objects
    "ConstraintSet",
    "OptimizationResult",
    "Landscape",
    "WedgeTriple",
    # Types
    "Mode",
    "SeedFn",
    # Constants
    "MODES",
    "DEFAULT_RESOLUTION",
    # Functions
    "constraint_values",
    "constraint_jacobian",
    "penalty",
    "penalty_grad",
    "penalized_objective",
    "project",
    "feasible_start",
    "vw_result",
    "optimize_uow",
    "optimize_bow",
    "grid_landscape",
    "optimize_one",
    "optimize_all",
]
