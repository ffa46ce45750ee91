import logging
from typing import Optional

import numpy as np

from ..schemas.network import Network
from ..schemas.rank import RankResult
from ..schemas.run_config import RunConfig
from .spectral import power_iterate, smooth, stochasticize

logger = logging.getLogger(__name__)


def pagerank(
    net: Network,
    cfg: Optional[RunConfig] = None,
    start: Optional[np.ndarray] = None,
) -> RankResult:
    """
    Stationary vector of alpha·S + (1-alpha)/N·eeᵀ, S being L with rows
    divided by outdegree and dangling rows replaced by 1/N.

    Weighted links (trading mode) split a vertex's score in proportion to
    the link weights.
    """
    cfg = cfg or RunConfig()
    operator = smooth(stochasticize(net.ranking_matrix()), cfg.alpha)
    result = power_iterate(
        operator,
        start=start,
        tolerance=cfg.tolerance,
        max_iterations=cfg.max_iterations,
    )
    logger.info(
        f"📊 PageRank on {net.name or 'network'}: {result.iterations} iterations, "
        f"converged={result.converged}"
    )
    return result.labelled("pagerank", net.vertices)
