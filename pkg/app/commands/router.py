# app/commands/router.py
import argparse
from pathlib import Path

from . import analyze, benchmark, compare, generate, ingest, rank

SUBCOMMANDS = (ingest, generate, rank, analyze, benchmark, compare)


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)

    # ⚙️ Settings
    common.add_argument("--config", type=Path, help="key=value settings file")
    common.add_argument("--log-level", choices=("DEBUG", "INFO", "WARNING", "ERROR"))

    # 📁 Output
    common.add_argument("--out-dir", type=Path, default=Path("out"))
    common.add_argument("--format", dest="output_format", choices=("tsv", "json"), default="tsv")
    common.add_argument("--full-precision", action="store_true")
    common.add_argument("--delimiter", help="input delimiter (default: from file suffix)")

    # 🌐 Network
    common.add_argument("--mode", choices=("www", "trading"), default="trading")
    common.add_argument(
        "--counts",
        dest="weighted_degrees",
        action="store_const",
        const=False,
        help="use link counts instead of volumes in degree constants",
    )

    # 📐 Ranking
    common.add_argument("--alpha", type=float)
    common.add_argument("--beta", type=float)
    common.add_argument("--zeta", type=float)
    common.add_argument("--c", dest="blend_c", type=float, help="reserved-resource blend weight")
    common.add_argument("--tolerance", type=float)
    common.add_argument("--max-iterations", type=int)
    common.add_argument("--seed", dest="rng_seed", type=int)
    common.add_argument("--workers", type=int)
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="traderank",
        description="Link-analysis rankings for web graphs and trade networks",
    )
    subparsers = parser.add_subparsers(dest="subcommand", required=True)
    parents = [_common_parser()]
    for module in SUBCOMMANDS:
        module.register(subparsers, parents)
    return parser


def config_overrides(args: argparse.Namespace) -> dict:
    """RunConfig fields given on the command line (None = not given)"""
    return {
        "alpha": args.alpha,
        "beta": args.beta,
        "zeta": args.zeta,
        "blend_c": args.blend_c,
        "tolerance": args.tolerance,
        "max_iterations": args.max_iterations,
        "rng_seed": args.rng_seed,
        "weighted_degrees": args.weighted_degrees,
        "workers": args.workers,
    }


def input_paths(args: argparse.Namespace) -> list:
    paths = []
    for name in ("input", "reserved", "datasets", "config"):
        value = getattr(args, name, None)
        if value is not None:
            paths.append(Path(value))
    paths.extend(Path(p) for p in (getattr(args, "inputs", None) or []))
    return paths
