from typing import Protocol, runtime_checkable

import numpy as np


@runtime_checkable
class FactorRegressor(Protocol):
    """
    Fitted regressor of one cognitive factor over (theta, leg, dist).

    Implemented by the polynomial and Gaussian-process models and by the
    closed-form synthetic fields.
    """

    target: str
    family: str

    def predict_many(self, x: np.ndarray) -> np.ndarray:
        """
        Predict the factor for every row of x.

        Args:
            x: array of shape (n, 3) with columns (theta [rad], leg [m], dist [m])

        Returns:
            array of shape (n,), unclamped
        """
        ...
