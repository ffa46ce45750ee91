# app/commands/benchmark.py
import argparse
import json
import logging
from pathlib import Path
from typing import List

from ..exceptions import ConfigError
from ..schemas.network import NetworkMode
from ..services.benchmark import BenchmarkRunner, dataset_summaries
from ..utils.artifacts import atomic_write_text, float_format
from .context import JobContext

logger = logging.getLogger(__name__)

EDGE_LIST_SUFFIXES = (".tsv", ".csv", ".txt", ".edges")


def register(subparsers, parents: List[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "benchmark", parents=parents, help="Iteration counts and similarities over many datasets"
    )
    parser.add_argument("--datasets", type=Path, required=True, help="directory of edge lists")
    parser.add_argument("--out", default="report.csv", help="report file name inside --out-dir")
    parser.set_defaults(handler=handle)


def dataset_files(directory: Path) -> List[Path]:
    if not directory.is_dir():
        raise FileNotFoundError(f"dataset directory not found: {directory}")
    files = sorted(
        p for p in directory.iterdir() if p.is_file() and p.suffix.lower() in EDGE_LIST_SUFFIXES
    )
    if not files:
        raise ConfigError(f"no edge-list files in {directory}")
    return files


def handle(args, ctx: JobContext) -> None:
    mode = NetworkMode(args.mode)
    networks = {
        path.stem: ctx.load_network(path, mode, name=path.stem)
        for path in dataset_files(args.datasets)
    }

    with ctx.step("benchmarking"):
        report = BenchmarkRunner(ctx.cfg).run(list(networks.values()), names=list(networks))

    with ctx.step(f"writing {args.out}"):
        frame = report.to_frame()
        path = ctx.out_dir / args.out
        delimiter = "," if path.suffix.lower() == ".csv" else ctx.delimiter
        text = frame.to_csv(
            sep=delimiter,
            index=False,
            float_format=float_format(ctx.settings.SIGNIFICANT_DIGITS, ctx.job.full_precision),
            lineterminator="\n",
        )
        atomic_write_text(path, text)
        ctx.record(path)
        logger.info(f"📁 Wrote benchmark report {path}")

    summary_path = ctx.out_dir / "datasets.json"
    atomic_write_text(
        summary_path, json.dumps(dataset_summaries(networks), indent=2, sort_keys=True) + "\n"
    )
    ctx.record(summary_path)
