"""
Command-line entry point.

    python -m workers.cli --command meeting-series --kind S --d 10 --steps 200

Exit codes: 0 on success, 2 on usage errors, 1 on any other failure.
"""
import argparse
import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from src.constant import TOOL_NAME, VERSION
from src.errors import QuantumWalkError, UsageError
from src.qwalk_model import RunConfig
from workers.config import LOG_LEVEL
from workers.runner import run

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=TOOL_NAME, description="Two-walker quantum and classical meeting experiments")
    parser.add_argument("--command", required=True, choices=["single-walk", "meeting-series", "overall-sweep"])
    parser.add_argument("--kind", help="L|R|S for single-walk; RL|S|LR|LL|RR|psi+|psi-|phi+|phi-|boson|fermion|classical for meeting-series; RL|S|LR for overall-sweep")
    parser.add_argument("--d", type=int, default=0, help="half-separation (walkers start 2d apart)")
    parser.add_argument("--steps", type=int, default=100, help="number of steps T")
    parser.add_argument("--out", help="output file; relative paths go under QWALK_OUTPUT_DIR")
    parser.add_argument("--format", choices=["csv", "json"], default="csv")
    parser.add_argument("--seed", type=int, help="seed for Monte-Carlo checks")
    parser.add_argument("--oracle", action="store_true", help="cross-check against the joint-state evolution")
    parser.add_argument("--quiet", action="store_true", help="only log warnings and errors")
    parser.add_argument("--start", default="RL", help="factorized coin pair for boson/fermion series")
    parser.add_argument("--workers", type=int, help="processes for overall sweeps")
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {VERSION}")
    return parser


def configure_logging(quiet: bool) -> None:
    level = logging.WARNING if quiet else getattr(logging, LOG_LEVEL, logging.INFO)
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )
    logging.getLogger().setLevel(level)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    configure_logging(args.quiet)
    try:
        config = RunConfig(
            command=args.command,
            kind=args.kind,
            d=args.d,
            steps=args.steps,
            output=args.out,
            format=args.format,
            seed=args.seed,
            oracle=args.oracle,
            quiet=args.quiet,
            start=args.start,
            workers=args.workers,
        )
    except ValidationError as e:
        logger.error(f"[CLI] invalid configuration: {e}")
        return EXIT_USAGE

    try:
        written = run(config)
    except UsageError as e:
        logger.error(f"[CLI] {e}")
        return EXIT_USAGE
    except (QuantumWalkError, OSError, InterruptedError) as e:
        logger.error(f"[CLI] {type(e).__name__}: {e}")
        return EXIT_RUNTIME
    except Exception as e:
        logger.error(f"[CLI] unexpected failure: {e}", exc_info=True)
        return EXIT_RUNTIME

    for path in written:
        logger.info(f"[CLI] wrote {path}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
