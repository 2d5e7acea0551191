from .value import DEFAULT_EPS2, Gauss2Diag, CostContext
from .kl import kl_terms, kl_qp
from .cognitive import (
    DEFAULT_GRAD_REL_STEP,
    predicted_p,
    ideal_q,
    cost_f,
    cost_many,
    numeric_grad,
    cost_grad,
    empirical_cost,
)

__all__ = [
    # Value Objects
    "Gauss2Diag",
    "CostContext",
    # Constants
    "DEFAULT_EPS2",
    "DEFAULT_GRAD_REL_STEP",
    # Functions
    "kl_terms",
    "kl_qp",
    "predicted_p",
    "ideal_q",
    "cost_f",
    "cost_many",
    "numeric_grad",
    "cost_grad",
    "empirical_cost",
]
