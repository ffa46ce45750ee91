# app/commands/generate.py
import argparse
import logging
from typing import List

from ..exceptions import ConfigError
from ..schemas.network import Network
from ..services.graph import export_edge_list
from ..services.netanalysis import generate_ba, generate_crawl, generate_er
from ..utils.artifacts import atomic_write_text
from ..utils.edgelist import format_edge_rows
from .context import JobContext

logger = logging.getLogger(__name__)


def register(subparsers, parents: List[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "generate", parents=parents, help="Write synthetic networks as edge lists"
    )
    parser.add_argument("--model", choices=("ba", "er", "crawl"), required=True)
    parser.add_argument("--n", type=int, required=True, help="number of vertices")
    parser.add_argument("--m", type=int, default=3, help="edges per new vertex (ba)")
    parser.add_argument("--p", type=float, help="link probability (er)")
    parser.add_argument("--mean-degree", type=float, default=8.0, help="average degree (crawl)")
    parser.add_argument(
        "--attachment", choices=("preferential", "uniform"), default="preferential"
    )
    parser.add_argument("--snapshot-every", type=int, help="also write growth snapshots (ba)")
    parser.add_argument("--symmetrize", action="store_true", help="add reverse links (ba)")
    parser.add_argument("--weighted", action="store_true", help="draw trade volumes (ba)")
    parser.add_argument("--name", help="file stem of the generated network")
    parser.set_defaults(handler=handle)


def _write_network(ctx: JobContext, net: Network, stem: str) -> None:
    path = ctx.out_dir / f"{stem}.tsv"
    atomic_write_text(path, format_edge_rows(export_edge_list(net), delimiter=ctx.delimiter))
    ctx.record(path)
    logger.info(f"📁 Wrote {net.vertex_count} vertices / {net.edge_count} links to {path}")


def handle(args, ctx: JobContext) -> None:
    seed = ctx.cfg.rng_seed

    with ctx.step(f"generating {args.model}"):
        if args.model == "ba":
            stem = args.name or f"{args.attachment}_n{args.n}_m{args.m}_seed{seed}"
            history = generate_ba(
                args.n,
                args.m,
                seed=seed,
                snapshot_every=args.snapshot_every,
                attachment=args.attachment,
                symmetrize=args.symmetrize,
                weighted=args.weighted,
            )
            if args.snapshot_every:
                for snapshot in history.snapshots[:-1]:
                    _write_network(ctx, snapshot, f"{stem}_t{snapshot.vertex_count}")
            _write_network(ctx, history.final, stem)

        elif args.model == "er":
            if args.p is None:
                raise ConfigError("--p is required for the er model")
            stem = args.name or f"er_n{args.n}_p{args.p:g}_seed{seed}"
            _write_network(ctx, generate_er(args.n, args.p, seed=seed), stem)

        else:
            stem = args.name or f"crawl_n{args.n}_d{args.mean_degree:g}_seed{seed}"
            _write_network(ctx, generate_crawl(args.n, args.mean_degree, seed=seed), stem)
