# app/commands/rank.py
import argparse
import logging
from pathlib import Path
from typing import List, Optional

import pandas as pd

from ..schemas.network import Network, NetworkMode
from ..schemas.rank import RankResult
from ..schemas.traderank import BlendInput
from ..services.evaluation import start_distance_profile, top_k_comparison
from ..services.hits import hits, hits_accelerated
from ..services.pagerank import pagerank
from ..services.traderank import blend_reserved, buyer_seller, traderank
from ..utils.edgelist import read_reserved
from .context import JobContext

logger = logging.getLogger(__name__)

ALGORITHMS = ("pagerank", "hits", "hits-accel", "traderank", "buyer-seller")


def _positive_int(raw: str) -> int:
    value = int(raw)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def register(subparsers, parents: List[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "rank", parents=parents, help="Rank the vertices of one network"
    )
    parser.add_argument("--algo", choices=ALGORITHMS, required=True)
    parser.add_argument("--input", type=Path, required=True, help="edge-list file")
    parser.add_argument("--reserved", type=Path, help="(id, amount) reserved-resource file")
    parser.add_argument("--top", type=_positive_int, help="keep only the top K rows")
    parser.add_argument("--query", help="list only ids containing this substring")
    parser.add_argument(
        "--compare-standard",
        action="store_true",
        help="also write the top-K listing next to the total-volume measure",
    )
    parser.add_argument("--trace", action="store_true", help="also write convergence traces")
    parser.set_defaults(handler=handle)


def _listing(result: RankResult, top: Optional[int], query: Optional[str]) -> pd.DataFrame:
    frame = result.to_frame()
    if query:
        frame = frame[frame["id"].str.contains(query, case=False, regex=False)]
    if top is not None:
        frame = frame.head(top)
    return frame.reset_index(drop=True)


def _emit(ctx: JobContext, args, result: RankResult, stem: str) -> None:
    ctx.write(_listing(result, args.top, args.query), f"{stem}_rankings")
    if args.trace:
        ctx.write(result.trace.to_frame(), f"{stem}_trace")
        ctx.write(start_distance_profile(result), f"{stem}_start_distance")


def _links(net: Network) -> Network:
    if net.mode is NetworkMode.TRADING:
        logger.info("ℹ️ Running HITS on the unweighted link pattern")
        return net.unweighted()
    return net


def handle(args, ctx: JobContext) -> None:
    net = ctx.load_network(args.input, NetworkMode(args.mode))
    cfg = ctx.cfg

    with ctx.step(f"ranking with {args.algo}"):
        if args.algo == "pagerank":
            _emit(ctx, args, pagerank(net, cfg), "pagerank")

        elif args.algo in ("hits", "hits-accel"):
            run = hits if args.algo == "hits" else hits_accelerated
            result = run(_links(net), cfg)
            _emit(ctx, args, result.authority, f"{args.algo}_authority")
            _emit(ctx, args, result.hub, f"{args.algo}_hub")

        elif args.algo == "traderank":
            result = traderank(net, cfg)
            if args.reserved:
                with ctx.step(f"blending {args.reserved}"):
                    reserved = read_reserved(args.reserved, net, delimiter=ctx.input_delimiter)
                    result = blend_reserved(result, BlendInput(reserved=reserved, c=cfg.blend_c))
            _emit(ctx, args, result, "traderank")
            if args.compare_standard:
                ctx.write(top_k_comparison(net, result, k=args.top or 10), "traderank_vs_standard")

        else:
            result = buyer_seller(net, cfg)
            _emit(ctx, args, result.buyer, "buyer")
            _emit(ctx, args, result.seller, "seller")
