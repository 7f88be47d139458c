"""
Experiment runs behind the command line.

Each run builds its tables from src.experiments, stamps them with the run
configuration, and writes them out.
"""
from functools import partial
from pathlib import Path
import logging

from src.experiments import Table, meeting_series_table, overall_sweep_tables, single_walk_table
from src.qwalk_model import RunConfig
from workers.output import resolve_path, write_tables
from workers.pool import ordered_map
from workers.signals import register_signal_handlers, reset_shutdown_flag, restore_signal_handlers
from workers.utils import timed

logger = logging.getLogger(__name__)


def _stamp(table: Table, config: RunConfig) -> Table:
    table.metadata = {**table.metadata, "config": config.metadata()}
    return table


def _default_name(config: RunConfig) -> str:
    return f"{config.command}-{config.kind}-d{config.d}-T{config.steps}.{config.format}"


def _write(tables: dict[str, Table], config: RunConfig) -> list[Path]:
    path = resolve_path(config.output, _default_name(config))
    return write_tables({name: _stamp(table, config) for name, table in tables.items()}, path, config.format)


@timed("SingleWalk")
def run_single_walk(config: RunConfig) -> list[Path]:
    return _write({"walk": single_walk_table(config.steps, config.kind)}, config)


@timed("MeetingSeries")
def run_meeting_series(config: RunConfig) -> list[Path]:
    table = meeting_series_table(
        config.kind, config.d, config.steps, start=config.start, oracle=config.oracle, seed=config.seed,
    )
    return _write({"series": table}, config)


@timed("Sweep")
def run_overall_sweep(config: RunConfig) -> list[Path]:
    # only the sweep polls the shutdown flag, between chunks
    reset_shutdown_flag()
    previous = register_signal_handlers()
    try:
        map_fn = partial(ordered_map, workers=config.workers)
        sweep, width = overall_sweep_tables(config.kind, config.steps, map_fn=map_fn)
    finally:
        restore_signal_handlers(previous)
    return _write({"sweep": sweep, "width": width}, config)


RUNNERS = {
    "single-walk": run_single_walk,
    "meeting-series": run_meeting_series,
    "overall-sweep": run_overall_sweep,
}


def run(config: RunConfig) -> list[Path]:
    logger.info(f"[CLI] running {config.command} kind={config.kind} d={config.d} T={config.steps}")
    return RUNNERS[config.command](config)
