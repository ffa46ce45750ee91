from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np
import pandas as pd

from ..exceptions import InsufficientDataError
from .network import Network


@dataclass(frozen=True)
class DegreeProfile:
    """
    Degree distribution of one direction of a network.

    gamma is the log-log least-squares power-law exponent over ``fit_range``;
    it is None (``exponent_defined`` False) when the degrees do not spread
    over at least two logarithmic bins. The log-likelihoods are evaluated on
    vertices with k >= 1 so the two reference distributions are comparable.
    """
    direction: str
    histogram: Dict[int, int]
    mean_degree: float
    gamma: Optional[float]
    fit_range: Optional[Tuple[int, int]]
    poisson_mean: float
    poisson_loglik: Optional[float] = None
    powerlaw_loglik: Optional[float] = None
    powerlaw_mle_exponent: Optional[float] = None

    @property
    def exponent_defined(self) -> bool:
        return self.gamma is not None

    @property
    def vertex_count(self) -> int:
        return sum(self.histogram.values())

    @property
    def p_k(self) -> Dict[int, float]:
        n = self.vertex_count
        return {k: count / n for k, count in sorted(self.histogram.items())}

    def to_frame(self) -> pd.DataFrame:
        p_k = self.p_k
        return pd.DataFrame({"k": list(p_k), "p_k": list(p_k.values())})


@dataclass(frozen=True)
class GrowthHistory:
    """The same growing network observed at increasing times"""
    snapshots: Tuple[Network, ...]

    def __post_init__(self):
        for earlier, later in zip(self.snapshots, self.snapshots[1:]):
            if not set(earlier.vertices) <= set(later.vertices):
                raise InsufficientDataError(
                    f"snapshot {later.name or len(later.vertices)} drops vertices "
                    "of the snapshot before it"
                )

    def __len__(self) -> int:
        return len(self.snapshots)

    @property
    def final(self) -> Network:
        return self.snapshots[-1]


@dataclass(frozen=True)
class PAFit:
    """Binned (k, mean growth) data and the fitted attachment exponent v"""
    v: float
    bin_k: np.ndarray
    bin_growth: np.ndarray
    bin_counts: np.ndarray
    pairs: int
    bin_base: float

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {"k": self.bin_k, "mean_delta_k": self.bin_growth, "count": self.bin_counts}
        )
