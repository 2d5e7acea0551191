from .regressor import FactorRegressor
from .pipeline import RecoveryRow, RoundtripResult, RoundtripPipeline

__all__ = [
    # Model interfaces
    "FactorRegressor",
    # Pipeline interfaces
    "RecoveryRow",
    "RoundtripResult",
    "RoundtripPipeline",
]
