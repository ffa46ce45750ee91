"""
Iteration-count benchmark across datasets.

Every dataset is ranked with PageRank, HITS, accelerated HITS and the trade
ranking at one tolerance; the trade ranking is compared with the
total-volume standard measure. A failing or non-converging cell is
recorded on its row instead of aborting the run.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Optional, Sequence

from ..exceptions import TradeRankError
from ..schemas.network import Network, NetworkMode
from ..schemas.rank import RankResult
from ..schemas.report import BenchmarkReport, BenchmarkRow
from ..schemas.run_config import RunConfig
from .evaluation import cosine, spearman, total_volume
from .graph import dataset_summary
from .hits import hits, hits_accelerated
from .pagerank import pagerank
from .traderank import traderank

logger = logging.getLogger(__name__)


def _converged_count(result: RankResult, label: str, row: BenchmarkRow) -> Optional[int]:
    if not result.converged:
        row.notes.append(f"{label} did not converge in {result.iterations} iterations")
        return None
    return result.iterations


class BenchmarkRunner:
    """
    Ranks a batch of datasets under one RunConfig, one BenchmarkRow each.
    A failing or non-converging cell is noted on its row and the batch
    carries on.
    """

    def __init__(self, cfg: Optional[RunConfig] = None):
        self.cfg = cfg or RunConfig()

    def _guarded(self, label: str, row: BenchmarkRow, run: Callable):
        try:
            return run()
        except TradeRankError as e:
            logger.error(f"❌ {row.name}: {label} failed: {e}")
            row.notes.append(f"{label} failed: {e}")
            return None

    def run_dataset(self, net: Network, name: Optional[str] = None) -> BenchmarkRow:
        cfg = self.cfg
        row = BenchmarkRow(
            name=name or net.name or "dataset",
            vertices=net.vertex_count,
            edges=net.edge_count,
        )
        links = net.unweighted() if net.mode is NetworkMode.TRADING else net

        pr = self._guarded("pagerank", row, lambda: pagerank(net, cfg))
        if pr is not None:
            row.pagerank_iterations = _converged_count(pr, "pagerank", row)

        classic = self._guarded("hits", row, lambda: hits(links, cfg))
        if classic is not None:
            row.hits_iterations = _converged_count(classic.authority, "hits authority", row)
            row.hits_hub_iterations = _converged_count(classic.hub, "hits hub", row)

        accel = self._guarded("hits-accel", row, lambda: hits_accelerated(links, cfg))
        if accel is not None:
            row.hits_accel_iterations = _converged_count(
                accel.authority, "hits-accel authority", row
            )

        if net.mode is NetworkMode.TRADING:
            trade = self._guarded("traderank", row, lambda: traderank(net, cfg))
            if trade is not None:
                row.traderank_iterations = _converged_count(trade, "traderank", row)
                standard = self._guarded("total volume", row, lambda: total_volume(net))
                if standard is not None:
                    row.cosine = min(1.0, max(0.0, cosine(trade.scores, standard)))
                    row.spearman = spearman(trade.scores, standard)
        else:
            row.notes.append("traderank skipped: www-mode dataset")

        logger.info(
            f"📊 {row.name}: HITS={row.hits_iterations} PR={row.pagerank_iterations} "
            f"HITS-accel={row.hits_accel_iterations} TR={row.traderank_iterations}"
        )
        return row

    def run(
        self,
        datasets: Sequence[Network],
        names: Optional[Sequence[str]] = None,
    ) -> BenchmarkReport:
        """One row per dataset, in input order; ``cfg.workers`` datasets run concurrently"""
        names = list(names) if names is not None else [None] * len(datasets)
        workers = self.cfg.workers

        if workers > 1 and len(datasets) > 1:
            with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="bench_worker") as pool:
                rows = list(pool.map(self.run_dataset, datasets, names))
        else:
            rows = [self.run_dataset(net, name) for net, name in zip(datasets, names)]

        report = BenchmarkReport(rows=rows)
        logger.info(f"✅ Benchmark finished on {len(rows)} datasets")
        return report


# ============================================================
# Runners
# ============================================================

def benchmark_dataset(net: Network, cfg: RunConfig, name: Optional[str] = None) -> BenchmarkRow:
    return BenchmarkRunner(cfg).run_dataset(net, name)


def benchmark(
    datasets: Sequence[Network],
    cfg: Optional[RunConfig] = None,
    names: Optional[Sequence[str]] = None,
) -> BenchmarkReport:
    return BenchmarkRunner(cfg).run(datasets, names)


def dataset_summaries(datasets: Dict[str, Network]) -> Dict[str, Dict[str, float]]:
    summaries = {}
    for name, net in datasets.items():
        vertices, links, average_degree = dataset_summary(net)
        summaries[name] = {"vertices": vertices, "edges": links, "average_degree": average_degree}
    return summaries
