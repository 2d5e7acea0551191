import math

import numpy as np


def is_valid(theta: float, leg: float, dist: float) -> bool:
    """
    Domain of definition of a wedge: 0 < theta < pi and 0 < d < l*cos(theta/2).

    Total function, strict inequalities; boundary combinations are invalid.
    The check is homogeneous in (leg, dist) for a fixed theta.
    """
    try:
        if not (0.0 < theta < math.pi):
            return False
        if not leg > 0.0:
            return False
        return 0.0 < dist < leg * math.cos(theta / 2)
    except TypeError:
        return False


def valid_mask(x) -> np.ndarray:
    """Row-wise is_valid over an (n, 3) array of (theta, leg, dist)."""
    arr = np.asarray(x, dtype=float).reshape(-1, 3)
    theta, leg, dist = arr[:, 0], arr[:, 1], arr[:, 2]
    with np.errstate(invalid="ignore"):
        return (
            (theta > 0.0)
            & (theta < math.pi)
            & (leg > 0.0)
            & (dist > 0.0)
            & (dist < leg * np.cos(theta / 2))
        )


__all__ = ["is_valid", "valid_mask"]
