"""
Ranking for trading networks.

A vertex becomes more important if it is pointed to by others with many
inlinks and points to others with many outlinks. Per vertex i:

    r_i <- beta · sum_{j -> i} r_j · ca_j · w_ji + (1 - beta) · sum_{i -> j} r_j · ch_j · w_ij

In row-vector form r <- r·M with M = beta·Ca·L + (1-beta)·Ch·Lᵀ, where Ca and
Ch are the diagonal matrices of the preferential-attachment constants. M is
made stochastic and smoothed with zeta before power iteration.
"""

import logging
from typing import Optional

import numpy as np
from scipy import sparse

from ..exceptions import MetricError, ModeError
from ..schemas.network import DegreeSummary, Network, NetworkMode
from ..schemas.rank import BuyerSellerResult, RankResult
from ..schemas.run_config import RunConfig
from ..schemas.traderank import BlendInput, PAConstants
from .graph import degree_summary
from .spectral import power_iterate, smooth, stochasticize

logger = logging.getLogger(__name__)

# relative gap below which in- and out-volume count as equal
BALANCE_RTOL = 1e-12


# ============================================================
# Preferential-attachment constants
# ============================================================

def pa_constants(deg: DegreeSummary) -> PAConstants:
    """
    ca_i = (indeg_i / deg_i) · |indeg_i - outdeg_i| ** p_i
    ch_i = (outdeg_i / deg_i) · |indeg_i - outdeg_i| ** -p_i

    0 ** 0 is taken as 1 so K stays invertible; isolated vertices get
    ca = ch = 0.
    """
    indeg = np.asarray(deg.indeg, dtype=float)
    outdeg = np.asarray(deg.outdeg, dtype=float)
    total = indeg + outdeg
    gap = indeg - outdeg

    # summed float volumes rarely cancel exactly
    balanced = np.abs(gap) <= BALANCE_RTOL * total
    p = np.where(balanced, 0, np.sign(gap)).astype(np.int64)

    k_diag = np.ones_like(total)
    k_diag[p == 1] = np.abs(gap[p == 1])
    k_diag[p == -1] = 1.0 / np.abs(gap[p == -1])

    active = total > 0
    ca = np.zeros_like(total)
    ch = np.zeros_like(total)
    ca[active] = indeg[active] / total[active] * k_diag[active]
    ch[active] = outdeg[active] / total[active] / k_diag[active]
    return PAConstants(ca=ca, ch=ch, p=p, k_diag=k_diag)


def _require_trading(net: Network) -> None:
    if net.mode is not NetworkMode.TRADING:
        raise ModeError(
            "trade ranking needs a trading-mode network (degrees must be volumes)"
        )


def _constants_for(net: Network, cfg: RunConfig) -> PAConstants:
    return pa_constants(
        degree_summary(net, weighted=cfg.weighted_degrees, include_self_loops=False)
    )


# ============================================================
# Operators
# ============================================================

def trade_operator(net: Network, cfg: Optional[RunConfig] = None) -> sparse.csr_matrix:
    """M = beta·Ca·L + (1 - beta)·Ch·Lᵀ, before any adjustment"""
    cfg = cfg or RunConfig()
    consts = _constants_for(net, cfg)
    L = net.ranking_matrix()
    authority = sparse.diags(consts.ca) @ L
    hub = sparse.diags(consts.ch) @ L.T
    return sparse.csr_matrix(cfg.beta * authority + (1.0 - cfg.beta) * hub)


def scalar_update(
    net: Network,
    r: np.ndarray,
    beta: float = 0.5,
    weighted: bool = True,
) -> np.ndarray:
    """One unadjusted update evaluated vertex by vertex, edge by edge"""
    consts = pa_constants(
        degree_summary(net, weighted=weighted, include_self_loops=False)
    )
    coo = net.ranking_matrix().tocoo()
    out = np.zeros(net.vertex_count)
    for j, i, w in zip(coo.row, coo.col, coo.data):
        # j -> i: j is an in-neighbor of i, and i is an out-neighbor of j
        out[i] += beta * r[j] * consts.ca[j] * w
        out[j] += (1.0 - beta) * r[i] * consts.ch[i] * w
    return out


# ============================================================
# Rankings
# ============================================================

def traderank(
    net: Network,
    cfg: Optional[RunConfig] = None,
    start: Optional[np.ndarray] = None,
) -> RankResult:
    """Unique positive ranking of agents in a trading network"""
    cfg = cfg or RunConfig()
    _require_trading(net)
    operator = smooth(stochasticize(trade_operator(net, cfg)), cfg.zeta)
    result = power_iterate(
        operator,
        start=start,
        tolerance=cfg.tolerance,
        max_iterations=cfg.max_iterations,
    )
    logger.info(
        f"📊 Trade ranking on {net.name or 'network'} (beta={cfg.beta}): "
        f"{result.iterations} iterations, converged={result.converged}"
    )
    return result.labelled("traderank", net.vertices)


def buyer_seller(
    net: Network,
    cfg: Optional[RunConfig] = None,
    start: Optional[np.ndarray] = None,
) -> BuyerSellerResult:
    """
    Agents ranked as buyers (b <- b·Ca·L) and as sellers (s <- s·Ch·Lᵀ),
    each operator made stochastic and smoothed like the combined one.
    """
    cfg = cfg or RunConfig()
    _require_trading(net)
    consts = _constants_for(net, cfg)
    L = net.ranking_matrix()

    chains = {
        "buyer": sparse.diags(consts.ca) @ L,
        "seller": sparse.diags(consts.ch) @ L.T,
    }
    results = {}
    for role, matrix in chains.items():
        operator = smooth(stochasticize(matrix), cfg.zeta)
        result = power_iterate(
            operator,
            start=start,
            tolerance=cfg.tolerance,
            max_iterations=cfg.max_iterations,
        )
        results[role] = result.labelled(role, net.vertices)

    logger.info(
        f"📊 Buyer/seller ranking on {net.name or 'network'}: "
        f"{results['buyer'].iterations} / {results['seller'].iterations} iterations"
    )
    return BuyerSellerResult(buyer=results["buyer"], seller=results["seller"])


def blend_reserved(rank: RankResult, blend: BlendInput) -> RankResult:
    """r_hat = c·r + (1 - c)·u / sum(u)"""
    if blend.reserved.shape != rank.scores.shape:
        raise MetricError(
            f"reserved vector has {blend.reserved.size} entries, ranking has {rank.scores.size}"
        )
    if not rank.converged:
        logger.warning("⚠️ Blending reserved resources into an unconverged ranking")

    scores = blend.c * rank.scores + (1.0 - blend.c) * blend.normalized
    scores = scores / scores.sum()
    return RankResult(
        scores=scores,
        iterations=rank.iterations,
        trace=rank.trace,
        converged=rank.converged,
        algorithm=f"{rank.algorithm}+reserved" if rank.algorithm else "reserved",
        vertices=rank.vertices,
    )
