from .features import (
    Target,
    TARGETS,
    SIGMA_TARGETS,
    Standardizer,
    monomial_count,
    factors_to_xy,
    data_hash,
)
from .validation import (
    DEFAULT_FOLDS,
    DEFAULT_TEST_FRACTION,
    CvRow,
    HoldoutRow,
    cv_splits,
    holdout_split,
)
from .metrics import mse, r2, adjust_r2, adjusted_r2
from .poly import (
    DEFAULT_LAMBDA_GRID,
    POLY_ORDERS,
    PolyModel,
    fit_poly,
    fit_poly_xy,
    poly_order_scores,
    select_poly_order,
)
from .gp import (
    MIN_GP_POINTS,
    matern52,
    GpHyperParams,
    GpHyperGrid,
    GpModel,
    fit_gp,
    fit_gp_xy,
    fit_gp_fixed,
)
from .cognitive import (
    DEFAULT_SIGMA_FLOOR,
    Family,
    CognitiveModel,
    FitReport,
    predict,
    fit_cognitive_model,
)

__all__ = [
    # Value Objects
    "Standardizer",
    "PolyModel",
    "GpHyperParams",
    "GpHyperGrid",
    "GpModel",
    "CognitiveModel",
    "FitReport",
    "CvRow",
    "HoldoutRow",
    # Types
    "Target",
    "Family",
    # Constants
    "TARGETS",
    "SIGMA_TARGETS",
    "DEFAULT_FOLDS",
    "DEFAULT_TEST_FRACTION",
    "DEFAULT_LAMBDA_GRID",
    "POLY_ORDERS",
    "MIN_GP_POINTS",
    "DEFAULT_SIGMA_FLOOR",
    # Functions
    "monomial_count",
    "factors_to_xy",
    "data_hash",
    "cv_splits",
    "holdout_split",
    "mse",
    "r2",
    "adjust_r2",
    "adjusted_r2",
    "fit_poly",
    "fit_poly_xy",
    "poly_order_scores",
    "select_poly_order",
    "matern52",
    "fit_gp",
    "fit_gp_xy",
    "fit_gp_fixed",
    "predict",
    "fit_cognitive_model",
]
