"""
Degree-distribution analysis, the preferential-attachment exponent test and
the synthetic graph generators used to exercise the rankings.
"""

import logging
import math
from collections import Counter
from typing import List, Literal, Optional, Tuple

import networkx as nx
import numpy as np
from scipy import optimize, special, stats

from ..exceptions import ConfigError, InsufficientDataError
from ..schemas.analysis import DegreeProfile, GrowthHistory, PAFit
from ..schemas.network import Edge, Network, NetworkMode
from .graph import build_network, degree_summary

logger = logging.getLogger(__name__)

Direction = Literal["in", "out", "total"]
Attachment = Literal["preferential", "uniform"]
LogLikelihoods = Tuple[Optional[float], Optional[float], Optional[float]]

# in- and out-degree exponents of crawl-shaped graphs; the rank offset caps
# the share of links the largest hub can draw
_CRAWL_IN_EXPONENT = 2.1
_CRAWL_OUT_EXPONENT = 2.7
_CRAWL_RANK_OFFSET = 10.0


# ============================================================
# Generators
# ============================================================

def _pick_preferential(
    rng: np.random.Generator,
    endpoints: np.ndarray,
    filled: int,
    existing: int,
    m: int,
) -> List[int]:
    """m distinct targets, each drawn proportional to current degree"""
    if filled == 0:
        return [int(t) for t in rng.choice(existing, size=m, replace=False)]
    chosen: List[int] = []
    while len(chosen) < m:
        target = int(endpoints[rng.integers(filled)])
        if target not in chosen:
            chosen.append(target)
    return chosen


def generate_ba(
    n: int,
    m_edges: int,
    seed: int = 0,
    snapshot_every: Optional[int] = None,
    attachment: Attachment = "preferential",
    symmetrize: bool = False,
    weighted: bool = False,
) -> GrowthHistory:
    """
    Grow a graph from an m_edges-clique; every new vertex links to m_edges
    distinct existing vertices chosen proportional to their degree
    (``attachment="uniform"`` picks them uniformly instead).

    Edges point new -> old. ``snapshot_every`` records the network each time
    that many vertices have been added; the final network is always the last
    snapshot. ``weighted`` draws lognormal trade volumes (trading mode).
    """
    if not n > m_edges >= 1:
        raise ConfigError(f"need n > m_edges >= 1, got n={n}, m_edges={m_edges}")
    if snapshot_every is not None and snapshot_every < 1:
        raise ConfigError("snapshot_every must be positive")
    if attachment not in ("preferential", "uniform"):
        raise ConfigError(f"unknown attachment rule {attachment!r}")

    rng = np.random.default_rng(seed)
    clique = [(i, j) for i in range(m_edges) for j in range(i)]
    total_edges = len(clique) + (n - m_edges) * m_edges
    sources = np.empty(total_edges, dtype=np.int64)
    targets = np.empty(total_edges, dtype=np.int64)
    endpoints = np.empty(2 * total_edges, dtype=np.int64)
    count = 0

    def add(u: int, v: int) -> None:
        nonlocal count
        sources[count], targets[count] = u, v
        endpoints[2 * count], endpoints[2 * count + 1] = u, v
        count += 1

    for u, v in clique:
        add(u, v)

    checkpoints: List[Tuple[int, int]] = []
    for new in range(m_edges, n):
        if snapshot_every and new % snapshot_every == 0:
            checkpoints.append((new, count))
        if attachment == "preferential":
            chosen = _pick_preferential(rng, endpoints, 2 * count, new, m_edges)
        else:
            chosen = [int(t) for t in rng.choice(new, size=m_edges, replace=False)]
        for target in chosen:
            add(new, target)
    checkpoints.append((n, count))

    weights = rng.lognormal(0.0, 1.0, size=total_edges) if weighted else np.ones(total_edges)
    mode = NetworkMode.TRADING if weighted else NetworkMode.WWW

    def snapshot(size: int, edge_count: int) -> Network:
        edges = [
            Edge(int(sources[k]), int(targets[k]), float(weights[k]))
            for k in range(edge_count)
        ]
        if symmetrize:
            edges += [Edge(e.target, e.source, e.weight) for e in edges]
        return build_network(
            (str(i) for i in range(size)), edges, mode=mode, name=f"{attachment}-{size}"
        )

    history = GrowthHistory(tuple(snapshot(size, ec) for size, ec in checkpoints))
    logger.info(
        f"✅ Grew {attachment} graph: n={n}, m={m_edges}, {total_edges} edges, "
        f"{len(history)} snapshots"
    )
    return history


def generate_er(n: int, edge_prob: float, seed: int = 0) -> Network:
    """Every ordered pair is a link independently with probability edge_prob"""
    if n < 1:
        raise ConfigError(f"need n >= 1, got {n}")
    if not 0 < edge_prob < 1:
        raise ConfigError(f"edge_prob must lie in (0, 1), got {edge_prob}")

    graph = nx.fast_gnp_random_graph(n, edge_prob, seed=seed, directed=True)
    edges = [Edge(int(u), int(v), 1.0) for u, v in sorted(graph.edges())]
    return build_network((str(i) for i in range(n)), edges, mode=NetworkMode.WWW, name=f"er-{n}")


def _power_weights(rng: np.random.Generator, n: int, exponent: float) -> np.ndarray:
    """Per-vertex link propensity (rank + offset)^(-1/(exponent-1)), ranks shuffled"""
    ranks = rng.permutation(n).astype(float) + _CRAWL_RANK_OFFSET
    weights = ranks ** (-1.0 / (exponent - 1.0))
    return weights / weights.sum()


def generate_crawl(n: int, mean_degree: float = 8.0, seed: int = 0) -> Network:
    """
    Web-like directed graph with power-law in- and out-degrees.

    Sources and targets are drawn from independent power-law propensities
    and distinct non-loop pairs are kept until the graph holds
    round(mean_degree·n/2) links, so the average total degree matches
    ``mean_degree`` to within 1/n.
    """
    if n < 3:
        raise ConfigError(f"need n >= 3, got {n}")
    if not 0 < mean_degree <= (n - 1) / 2:
        raise ConfigError(
            f"mean_degree must lie in (0, {(n - 1) / 2:g}] for n={n}, got {mean_degree}"
        )

    rng = np.random.default_rng(seed)
    source_p = _power_weights(rng, n, _CRAWL_OUT_EXPONENT)
    target_p = _power_weights(rng, n, _CRAWL_IN_EXPONENT)
    wanted = int(round(mean_degree * n / 2))

    codes = np.empty(0, dtype=np.int64)
    while codes.size < wanted:
        batch = 2 * (wanted - codes.size) + 64
        u = rng.choice(n, size=batch, p=source_p)
        v = rng.choice(n, size=batch, p=target_p)
        drawn = np.concatenate([codes, (u * n + v)[u != v]])
        _, first = np.unique(drawn, return_index=True)
        codes = drawn[np.sort(first)][:wanted]

    edges = [Edge(int(c // n), int(c % n), 1.0) for c in np.sort(codes)]
    logger.info(f"✅ Drew crawl-shaped graph: n={n}, {len(edges)} links")
    return build_network((str(i) for i in range(n)), edges, mode=NetworkMode.WWW, name=f"crawl-{n}")


# ============================================================
# Degree distributions
# ============================================================

def _unweighted_degrees(net: Network, direction: Direction) -> np.ndarray:
    summary = degree_summary(net, weighted=False)
    if direction == "in":
        values = summary.indeg
    elif direction == "out":
        values = summary.outdeg
    elif direction == "total":
        values = summary.deg
    else:
        raise ConfigError(f"unknown direction {direction!r}")
    return np.rint(values).astype(np.int64)


def _log_bins(lo: int, hi: int, base: float) -> np.ndarray:
    edges = [float(lo)]
    while edges[-1] <= hi:
        edges.append(edges[-1] * base)
    return np.asarray(edges)


def fit_power_law(
    degrees: np.ndarray,
    k_min: int = 2,
    bin_base: float = 2.0,
) -> Tuple[Optional[float], Optional[Tuple[int, int]]]:
    """
    Exponent gamma of p_k ∝ k^-gamma by least squares on log-binned
    densities over k >= k_min. Returns (None, None) when the degrees do not
    cover two bins.
    """
    tail = degrees[degrees >= k_min]
    if tail.size == 0 or np.unique(tail).size < 2:
        return None, None

    lo, hi = int(tail.min()), int(tail.max())
    edges = _log_bins(lo, hi, bin_base)
    counts, _ = np.histogram(tail, bins=edges)
    first = np.ceil(edges[:-1]).astype(np.int64)
    last = np.ceil(edges[1:]).astype(np.int64) - 1
    widths = last - first + 1

    keep = (counts > 0) & (widths > 0)
    if keep.sum() < 2:
        return None, None
    centres = np.sqrt(first[keep] * last[keep].astype(float))
    density = counts[keep] / (degrees.size * widths[keep])
    slope, _ = np.polyfit(np.log(centres), np.log(density), 1)
    return float(-slope), (lo, hi)


def _loglikelihoods(degrees: np.ndarray) -> LogLikelihoods:
    """Zero-truncated Poisson vs discrete power law on the vertices with k >= 1"""
    ks = degrees[degrees >= 1].astype(float)
    if ks.size < 2:
        return None, None, None

    mean = ks.mean()
    poisson = float(
        np.sum(stats.poisson.logpmf(ks, mean)) - ks.size * math.log1p(-math.exp(-mean))
    )

    log_sum = float(np.log(ks).sum())

    def negative(gamma: float) -> float:
        return gamma * log_sum + ks.size * math.log(special.zeta(gamma, 1.0))

    best = optimize.minimize_scalar(negative, bounds=(1.01, 10.0), method="bounded")
    return poisson, float(-best.fun), float(best.x)


def degree_profile(
    net: Network,
    direction: Direction = "total",
    k_min: int = 2,
    bin_base: float = 2.0,
) -> DegreeProfile:
    """Histogram of unweighted degrees with power-law and Poisson fits"""
    if net.vertex_count < 2:
        raise InsufficientDataError("degree profile needs at least 2 vertices")

    degrees = _unweighted_degrees(net, direction)
    histogram = dict(sorted(Counter(int(k) for k in degrees).items()))
    mean = float(degrees.mean())
    gamma, fit_range = fit_power_law(degrees, k_min=k_min, bin_base=bin_base)
    if gamma is None:
        logger.warning(f"⚠️ Power-law exponent undefined for {direction}-degrees (no spread)")
    poisson_ll, powerlaw_ll, mle_gamma = _loglikelihoods(degrees)

    return DegreeProfile(
        direction=direction,
        histogram=histogram,
        mean_degree=mean,
        gamma=gamma,
        fit_range=fit_range,
        poisson_mean=mean,
        poisson_loglik=poisson_ll,
        powerlaw_loglik=powerlaw_ll,
        powerlaw_mle_exponent=mle_gamma,
    )


# ============================================================
# Preferential-attachment exponent
# ============================================================

def _bin_width(ks: np.ndarray, bin_base: float, min_bins: int) -> float:
    """
    Log-width of the k bins: log(bin_base), narrowed so the observed k range
    spans at least min_bins + 1 bins.
    """
    if bin_base <= 1:
        raise ConfigError(f"bin_base must exceed 1, got {bin_base}")
    span = math.log(ks.max() / ks.min())
    if span <= 0:
        return math.log(bin_base)
    return min(math.log(bin_base), span / (min_bins + 1))


def pa_fit(
    history: GrowthHistory,
    bin_base: float = 2.0,
    min_bins: int = 5,
) -> PAFit:
    """
    Fit Δk ∝ k^v over consecutive snapshot pairs.

    Growth is divided by its per-pair mean before pooling, then averaged in
    logarithmic bins of k starting at the smallest observed k and fitted on
    log-log axes (weighted by bin size). Narrow degree ranges, as uniform
    attachment produces, get a smaller bin base than ``bin_base``.
    """
    if len(history) < 2:
        raise InsufficientDataError(
            f"need at least 2 snapshots, got {len(history)}"
        )

    pooled_k: List[np.ndarray] = []
    pooled_growth: List[np.ndarray] = []
    pairs = 0
    for earlier, later in zip(history.snapshots, history.snapshots[1:]):
        before = degree_summary(earlier, weighted=False).deg
        after_all = degree_summary(later, weighted=False).deg
        after = after_all[[later.index_of(v) for v in earlier.vertices]]

        active = before > 0
        growth = after[active] - before[active]
        if not active.any() or growth.mean() <= 0:
            continue
        pooled_k.append(before[active])
        pooled_growth.append(growth / growth.mean())
        pairs += 1

    if not pairs:
        raise InsufficientDataError("no snapshot pair shows degree growth")

    ks = np.concatenate(pooled_k)
    growth = np.concatenate(pooled_growth)
    width = _bin_width(ks, bin_base, min_bins)
    bins = np.floor(np.log(ks / ks.min()) / width + 1e-9).astype(np.int64)

    bin_k, bin_growth, bin_counts = [], [], []
    for b in np.unique(bins):
        members = bins == b
        mean_growth = growth[members].mean()
        if mean_growth <= 0:
            continue
        bin_k.append(float(np.exp(np.log(ks[members]).mean())))
        bin_growth.append(float(mean_growth))
        bin_counts.append(int(members.sum()))

    if len(bin_k) < min_bins:
        raise InsufficientDataError(
            f"only {len(bin_k)} non-empty degree bins, need {min_bins}"
        )

    slope, _ = np.polyfit(
        np.log(bin_k), np.log(bin_growth), 1, w=np.sqrt(np.asarray(bin_counts, dtype=float))
    )
    logger.info(
        f"📊 Attachment exponent v={slope:.3f} from {pairs} snapshot pairs "
        f"(bin base {math.exp(width):.3f})"
    )
    return PAFit(
        v=float(slope),
        bin_k=np.asarray(bin_k),
        bin_growth=np.asarray(bin_growth),
        bin_counts=np.asarray(bin_counts),
        pairs=pairs,
        bin_base=math.exp(width),
    )


def pa_exponent(history: GrowthHistory, bin_base: float = 2.0, min_bins: int = 5) -> float:
    return pa_fit(history, bin_base=bin_base, min_bins=min_bins).v
