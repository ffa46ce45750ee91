from dataclasses import dataclass

import numpy as np

from ..exceptions import ConfigError, MetricError


@dataclass(frozen=True)
class PAConstants:
    """
    Per-vertex preferential-attachment constants.

    p is +1 / -1 / 0 as indegree exceeds / falls short of / equals outdegree,
    k_diag = |indeg - outdeg| ** p (0 ** 0 taken as 1), ca amplifies
    inlink-rich vertices and ch outlink-rich ones. Isolated vertices carry
    ca = ch = 0 and k = 1.
    """
    ca: np.ndarray
    ch: np.ndarray
    p: np.ndarray
    k_diag: np.ndarray


@dataclass(frozen=True)
class BlendInput:
    reserved: np.ndarray
    c: float

    def __post_init__(self):
        reserved = np.asarray(self.reserved, dtype=float)
        if reserved.ndim != 1:
            raise MetricError("reserved amounts must be a vector")
        if np.any(reserved < 0) or not np.all(np.isfinite(reserved)):
            raise MetricError("reserved amounts must be finite and nonnegative")
        if not 0 < self.c < 1:
            raise ConfigError(f"blend c must lie in (0, 1), got {self.c}")
        object.__setattr__(self, "reserved", reserved)

    @property
    def normalized(self) -> np.ndarray:
        total = self.reserved.sum()
        if total <= 0:
            raise MetricError("reserved amounts are all zero")
        return self.reserved / total
