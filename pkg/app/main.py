# app/main.py
import logging
import sys
from typing import List, Optional

from .commands.context import JobContext
from .commands.router import build_parser, config_overrides, input_paths
from .config import load_settings
from .exceptions import TradeRankError
from .schemas.report import JobRecord
from .utils.artifacts import check_previous_run, input_digests, write_manifest

# ============================================================
# Setup Logging
# ============================================================
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
logger = logging.getLogger(__name__)


def _configure_logging(level: str) -> None:
    numeric = getattr(logging, level.upper(), logging.INFO)
    logging.basicConfig(level=numeric, format=LOG_FORMAT)
    logging.getLogger().setLevel(numeric)


# ============================================================
# Entry point
# ============================================================

def run(argv: Optional[List[str]] = None) -> int:
    """
    Execute one subcommand. Returns 0 on success, 1 when the job failed
    and 2 on a usage error.
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2

    ctx: Optional[JobContext] = None
    try:
        settings = load_settings(args.config)
        _configure_logging(args.log_level or settings.LOG_LEVEL)

        job = JobRecord(
            subcommand=args.subcommand,
            inputs=input_paths(args),
            config=settings.run_config(**config_overrides(args)),
            out_dir=args.out_dir,
            output_format=args.output_format,
            full_precision=args.full_precision,
        )
        ctx = JobContext(
            job=job,
            settings=settings,
            delimiter=settings.DELIMITER,
            input_delimiter=args.delimiter,
        )

        with ctx.step("hashing inputs"):
            digests = input_digests(job.inputs)
            check_previous_run(job.out_dir, job.subcommand, digests)

        logger.info(f"🚀 {settings.APP_NAME} {job.subcommand} -> {job.out_dir}")
        args.handler(args, ctx)

        with ctx.step("writing manifest"):
            write_manifest(
                job.out_dir,
                {**job.model_dump(mode="json"), "argv": argv},
                digests,
                ctx.artifacts,
            )
        logger.info(f"✅ {job.subcommand} finished: {len(ctx.artifacts)} artifacts")
        return 0

    except (TradeRankError, OSError) as e:
        stage = ctx.stage if ctx else "setup"
        logger.error(f"❌ {args.subcommand} failed while {stage}: {e}")
        print(f"error: {args.subcommand} failed while {stage}: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
