# app/commands/ingest.py
import argparse
import json
import logging
from pathlib import Path
from typing import List

from ..schemas.network import Network, NetworkMode
from ..services.graph import dataset_summary, export_edge_list, ingest_edge_list, split_by_resource
from ..utils.artifacts import atomic_write_text
from ..utils.edgelist import format_edge_rows, read_edge_rows
from .context import JobContext

logger = logging.getLogger(__name__)


def register(subparsers, parents: List[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "ingest", parents=parents, help="Validate and normalize an edge list"
    )
    parser.add_argument("--input", type=Path, required=True, help="edge-list file")
    parser.add_argument(
        "--split-by-resource",
        action="store_true",
        help="write one network per resource label",
    )
    parser.set_defaults(handler=handle)


def _safe_stem(label: str) -> str:
    return "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in label)


def _export(ctx: JobContext, net: Network, stem: str) -> dict:
    path = ctx.out_dir / f"{stem}.tsv"
    atomic_write_text(path, format_edge_rows(export_edge_list(net), delimiter=ctx.delimiter))
    ctx.record(path)
    vertices, links, average_degree = dataset_summary(net)
    logger.info(f"✅ {stem}: {vertices} vertices, {links} links")
    return {"vertices": vertices, "edges": links, "average_degree": average_degree}


def handle(args, ctx: JobContext) -> None:
    mode = NetworkMode(args.mode)
    with ctx.step(f"loading {args.input}"):
        rows = read_edge_rows(args.input, delimiter=ctx.input_delimiter)

    summary = {}
    if args.split_by_resource:
        with ctx.step("splitting by resource"):
            networks = split_by_resource(rows, mode=mode)
        for label, net in networks.items():
            summary[label] = _export(ctx, net, f"resource_{_safe_stem(label)}")
    else:
        with ctx.step("ingesting"):
            net = ingest_edge_list(rows, mode=mode, name=args.input.stem)
        summary[net.name] = _export(ctx, net, f"{_safe_stem(net.name)}_normalized")

    path = ctx.out_dir / "ingest_summary.json"
    atomic_write_text(path, json.dumps(summary, indent=2, sort_keys=True) + "\n")
    ctx.record(path)
