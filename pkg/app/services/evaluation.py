"""
Similarity metrics between rankings and the total-volume standard measure.
"""

import logging
from typing import Tuple

import numpy as np
import pandas as pd

from ..exceptions import MetricError
from ..schemas.network import Network
from ..schemas.rank import Ordering, RankResult
from .graph import degree_summary

logger = logging.getLogger(__name__)


def _pair(x, y) -> Tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.shape != y.shape:
        raise MetricError(f"dimension mismatch: {x.size} vs {y.size}")
    return x, y


def ordering(x) -> Ordering:
    """Rank positions (1 = largest); ties go to the lower vertex index"""
    return Ordering.from_scores(np.asarray(x, dtype=float))


def cosine(x, y) -> float:
    x, y = _pair(x, y)
    norm_x, norm_y = np.linalg.norm(x), np.linalg.norm(y)
    if norm_x == 0 or norm_y == 0:
        raise MetricError("cosine is undefined for a zero vector")
    return float(np.dot(x, y) / (norm_x * norm_y))


def spearman(x, y) -> float:
    """rho = 1 - 6·sum(d²) / (N(N² - 1)) over the induced orderings, no tie correction"""
    x, y = _pair(x, y)
    n = x.size
    if n < 2:
        raise MetricError("spearman needs at least 2 entries")
    d = ordering(x).ranks - ordering(y).ranks
    return float(1.0 - 6.0 * np.sum(d.astype(float) ** 2) / (n * (n * n - 1.0)))


def total_volume(net: Network) -> np.ndarray:
    """Export + import volume per agent, normalized to sum 1"""
    volume = degree_summary(net, weighted=True, include_self_loops=False).deg
    total = volume.sum()
    if net.vertex_count == 0 or total <= 0:
        raise MetricError("total volume is undefined for a network without trade")
    return volume / total


def top_k_comparison(net: Network, result: RankResult, k: int = 10) -> pd.DataFrame:
    """Top-k agents by the standard measure next to the top-k by a ranking"""
    standard = total_volume(net)
    k = min(k, net.vertex_count)
    by_standard = ordering(standard).order()[:k]
    by_rank = ordering(result.scores).order()[:k]
    return pd.DataFrame(
        {
            "position": np.arange(1, k + 1),
            "standard_id": [net.vertices[i] for i in by_standard],
            "standard_score": standard[by_standard],
            "ranked_id": [net.vertices[i] for i in by_rank],
            "ranked_score": result.scores[by_rank],
        }
    )


def start_distance_profile(result: RankResult, start=None) -> pd.DataFrame:
    """|final - start| per vertex, listed from the top-ranked vertex down"""
    n = len(result.scores)
    start = np.full(n, 1.0 / n) if start is None else np.asarray(start, dtype=float)
    order = result.ordering().order()
    distance = np.abs(result.scores - start)
    return pd.DataFrame(
        {
            "rank": np.arange(1, n + 1),
            "distance": distance[order],
        }
    )
