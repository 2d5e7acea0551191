import numpy as np

from .value import Gauss2Diag


def kl_terms(mu_q, var_q, mu_p, var_p):
    """Per-dimension KL(N(mu_q, var_q) || N(mu_p, var_p)); broadcasts over arrays."""
    mu_q, var_q, mu_p, var_p = (np.asarray(a, dtype=float) for a in (mu_q, var_q, mu_p, var_p))
    return 0.5 * np.log(var_p / var_q) + (var_q + (mu_q - mu_p) ** 2) / (2.0 * var_p) - 0.5


def kl_qp(q: Gauss2Diag, p: Gauss2Diag) -> float:
    """D_KL(Q || P) in nats, closed form summed over the two dimensions."""
    total = kl_terms(q.mean_x, q.var_x, p.mean_x, p.var_x) + kl_terms(
        q.mean_y, q.var_y, p.mean_y, p.var_y
    )
    # clip rounding below zero
    return max(float(total), 0.0)


__all__ = ["kl_terms", "kl_qp"]
