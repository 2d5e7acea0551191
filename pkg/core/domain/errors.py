from typing import Any


class WedgeOptError(Exception):
    """Base class for every error raised by the library."""


class DomainError(WedgeOptError, ValueError):
    """Parameters or inputs outside their domain of definition."""


class InsufficientDataError(WedgeOptError):
    pass


class DegenerateSampleError(WedgeOptError):
    """Sample covariance is singular (identical or collinear points)."""


class FitError(WedgeOptError):
    pass


class ModelStateError(WedgeOptError):
    """Model used before it was fitted, or fitted state is missing."""


class ModelVersionError(WedgeOptError):
    pass


class ParseError(WedgeOptError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class RecordValidationError(WedgeOptError):
    def __init__(self, message: str, line: int | None = None, row: Any = None):
        self.line = line
        self.row = row
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message} (row={row!r})")


class InfeasibleError(WedgeOptError):
    pass


class NumericalError(WedgeOptError):
    def __init__(self, message: str, params: Any = None):
        self.params = params
        super().__init__(f"{message} at params={params!r}" if params is not None else message)


class PipelineStageError(WedgeOptError):
    def __init__(self, stage: str, message: str):
        self.stage = stage
        super().__init__(f"[{stage}] {message}")


def with_label(exc: Exception, label: str) -> Exception:
    """Prefix an exception message in place, keeping its class."""
    exc.args = (f"{label}: {exc}",) + tuple(exc.args[1:])
    return exc


__all__ = [
    "with_label",
    "WedgeOptError",
    "DomainError",
    "InsufficientDataError",
    "DegenerateSampleError",
    "FitError",
    "ModelStateError",
    "ModelVersionError",
    "ParseError",
    "RecordValidationError",
    "InfeasibleError",
    "NumericalError",
    "PipelineStageError",
]
