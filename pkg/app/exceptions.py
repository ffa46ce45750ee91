"""Error hierarchy shared by every service and the CLI."""

from typing import Optional


class TradeRankError(Exception):
    """Base class for all domain failures."""


class IngestError(TradeRankError, ValueError):
    """A transaction row or edge-list line could not be accepted."""

    def __init__(self, message: str, row: Optional[int] = None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class ConfigError(TradeRankError, ValueError):
    pass


class OperatorError(TradeRankError, ValueError):
    """Invalid matrix or operator handed to the spectral engine."""


class NonFiniteIterateError(TradeRankError, ArithmeticError):
    def __init__(self, iteration: int):
        self.iteration = iteration
        super().__init__(f"non-finite value in iterate at iteration {iteration}")


class ModeError(TradeRankError, ValueError):
    """Algorithm called on a network of the wrong mode (www vs trading)."""


class InsufficientDataError(TradeRankError, ValueError):
    pass


class MetricError(TradeRankError, ValueError):
    pass
