"""
HITS authorities and hubs, classic and preferential-attachment weighted.

Classic:      a <- a·LᵀL,          h <- h·LLᵀ
Accelerated:  a <- a·Ca·Lᵀ·Ch·L,   h <- h·Ch·L·Ca·Lᵀ

The second form is the alternation a <- h·Ch·L, h <- a·Ca·Lᵀ folded into
one chain per vector. Both chains get the positivity adjustment
zeta·X + (1-zeta)/N·eeᵀ and are normalized to 1-norm 1 every step.
"""

import logging
from typing import Optional

import numpy as np
from scipy import sparse

from ..exceptions import ModeError
from ..schemas.network import Network, NetworkMode
from ..schemas.rank import HitsResult
from ..schemas.run_config import RunConfig
from .graph import degree_summary
from .spectral import ChainOperator, power_iterate, smooth
from .traderank import pa_constants

logger = logging.getLogger(__name__)


def weighted_hits(
    net: Network,
    cfg: RunConfig,
    ca: np.ndarray,
    ch: np.ndarray,
    start: Optional[np.ndarray] = None,
    algorithm: str = "hits",
) -> HitsResult:
    """Shared alternation; unit ca / ch give classic HITS"""
    if net.mode is not NetworkMode.WWW:
        raise ModeError("HITS runs on www-mode networks; use Network.unweighted()")

    L = net.ranking_matrix()
    ca_lt = sparse.diags(ca) @ L.T
    ch_l = sparse.diags(ch) @ L

    chains = {
        "authority": ChainOperator([ca_lt, ch_l]),
        "hub": ChainOperator([ch_l, ca_lt]),
    }
    results = {}
    for role, chain in chains.items():
        operator = smooth(chain, cfg.zeta, require_stochastic=False)
        result = power_iterate(
            operator,
            start=start,
            tolerance=cfg.tolerance,
            max_iterations=cfg.max_iterations,
        )
        results[role] = result.labelled(f"{algorithm}-{role}", net.vertices)

    logger.info(
        f"📊 {algorithm} on {net.name or 'network'}: authority "
        f"{results['authority'].iterations} / hub {results['hub'].iterations} iterations"
    )
    return HitsResult(authority=results["authority"], hub=results["hub"])


def hits(
    net: Network,
    cfg: Optional[RunConfig] = None,
    start: Optional[np.ndarray] = None,
) -> HitsResult:
    cfg = cfg or RunConfig()
    ones = np.ones(net.vertex_count)
    return weighted_hits(net, cfg, ones, ones, start=start, algorithm="hits")


def hits_accelerated(
    net: Network,
    cfg: Optional[RunConfig] = None,
    start: Optional[np.ndarray] = None,
) -> HitsResult:
    """
    HITS with every page's contribution weighted by its ca (hub update) or
    ch (authority update); the constants come from link counts.
    """
    cfg = cfg or RunConfig()
    consts = pa_constants(
        degree_summary(net, weighted=False, include_self_loops=False)
    )
    return weighted_hits(
        net, cfg, consts.ca, consts.ch, start=start, algorithm="hits-accel"
    )
