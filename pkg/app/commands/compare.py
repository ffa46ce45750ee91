# app/commands/compare.py
import argparse
import logging
from pathlib import Path
from typing import List

import pandas as pd

from ..exceptions import ConfigError
from ..schemas.network import NetworkMode
from ..services.hits import hits, hits_accelerated
from ..services.pagerank import pagerank
from ..services.traderank import traderank
from .context import JobContext

logger = logging.getLogger(__name__)

RUNNERS = {
    "pagerank": pagerank,
    "hits": lambda net, cfg: hits(net, cfg).authority,
    "hits-hub": lambda net, cfg: hits(net, cfg).hub,
    "hits-accel": lambda net, cfg: hits_accelerated(net, cfg).authority,
    "hits-accel-hub": lambda net, cfg: hits_accelerated(net, cfg).hub,
    "traderank": traderank,
}
LINK_ONLY = {"hits", "hits-hub", "hits-accel", "hits-accel-hub"}


def register(subparsers, parents: List[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "compare-convergence",
        parents=parents,
        help="Residual traces of several algorithms side by side",
    )
    parser.add_argument(
        "--algos",
        default="hits,hits-accel",
        help=f"comma-separated, from {', '.join(RUNNERS)}",
    )
    parser.add_argument("--input", type=Path, required=True, help="edge-list file")
    parser.set_defaults(handler=handle)


def parse_algos(raw: str) -> List[str]:
    algos = [a.strip() for a in raw.split(",") if a.strip()]
    unknown = [a for a in algos if a not in RUNNERS]
    if unknown or not algos:
        raise ConfigError(f"unknown algorithms: {', '.join(unknown) or raw!r}")
    return algos


def handle(args, ctx: JobContext) -> None:
    algos = parse_algos(args.algos)
    net = ctx.load_network(args.input, NetworkMode(args.mode))
    links = net.unweighted() if net.mode is NetworkMode.TRADING else net

    columns = {}
    for algo in algos:
        with ctx.step(f"running {algo}"):
            target = links if algo in LINK_ONLY else net
            result = RUNNERS[algo](target, ctx.cfg)
        columns[algo] = pd.Series(result.trace.residuals, index=range(1, len(result.trace) + 1))
        logger.info(f"📊 {algo}: {result.iterations} iterations, converged={result.converged}")

    # shorter traces are padded with blanks
    frame = pd.DataFrame(columns)
    frame.index.name = "iteration"
    ctx.write(frame.reset_index(), "convergence")
