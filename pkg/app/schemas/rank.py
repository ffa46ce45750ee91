from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np
import pandas as pd


@dataclass(frozen=True)
class Ordering:
    """ranks[i] is the 1-based position of vertex i (1 = largest score)"""
    ranks: np.ndarray

    @classmethod
    def from_scores(cls, scores: np.ndarray) -> "Ordering":
        scores = np.asarray(scores, dtype=float)
        index = np.arange(len(scores))
        # descending score, ties by ascending vertex index
        order = np.lexsort((index, -scores))
        ranks = np.empty(len(scores), dtype=np.int64)
        ranks[order] = np.arange(1, len(scores) + 1)
        return cls(ranks=ranks)

    def order(self) -> np.ndarray:
        """Vertex indices from rank 1 downwards"""
        return np.argsort(self.ranks, kind="stable")

    def __len__(self) -> int:
        return len(self.ranks)


@dataclass(frozen=True)
class ConvergenceTrace:
    residuals: Tuple[float, ...] = ()

    def __len__(self) -> int:
        return len(self.residuals)

    @property
    def final_residual(self) -> Optional[float]:
        return self.residuals[-1] if self.residuals else None

    def to_frame(self, column: str = "residual") -> pd.DataFrame:
        return pd.DataFrame(
            {
                "iteration": np.arange(1, len(self.residuals) + 1),
                column: np.asarray(self.residuals, dtype=float),
            }
        )


@dataclass(frozen=True)
class RankResult:
    scores: np.ndarray
    iterations: int
    trace: ConvergenceTrace
    converged: bool
    algorithm: str = ""
    vertices: Tuple[str, ...] = field(default=(), repr=False)

    def labelled(self, algorithm: str, vertices: Tuple[str, ...]) -> "RankResult":
        return replace(self, algorithm=algorithm, vertices=tuple(vertices))

    def ordering(self) -> Ordering:
        return Ordering.from_scores(self.scores)

    def to_frame(self) -> pd.DataFrame:
        """(id, score, rank) records sorted by descending score"""
        ordering = self.ordering()
        order = ordering.order()
        ids = self.vertices or tuple(str(i) for i in range(len(self.scores)))
        return pd.DataFrame(
            {
                "id": [ids[i] for i in order],
                "score": self.scores[order],
                "rank": ordering.ranks[order],
            }
        )


@dataclass(frozen=True)
class HitsResult:
    authority: RankResult
    hub: RankResult

    @property
    def iterations(self) -> int:
        # the authority chain is the reported count; hub is kept alongside
        return self.authority.iterations


@dataclass(frozen=True)
class BuyerSellerResult:
    buyer: RankResult
    seller: RankResult
