"""
CSV and JSON writers for experiment tables.

CSV files start with one '#' comment line holding the run metadata as JSON,
then a header row; fields are comma separated with LF line endings. JSON
documents mirror the columns as arrays.
"""
import csv
import json
import logging
from pathlib import Path
from typing import Any, Optional

from src.errors import OutputError
from src.experiments import Table
from workers.config import OUTPUT_DIR
from workers.utils import format_cell

logger = logging.getLogger(__name__)


def resolve_path(out: Optional[str], default_name: str) -> Path:
    """Relative paths (and the default name) live under OUTPUT_DIR."""
    path = Path(out) if out else Path(default_name)
    return path if path.is_absolute() else Path(OUTPUT_DIR) / path


def table_document(table: Table) -> dict[str, Any]:
    return {
        "metadata": table.metadata,
        "columns": table.columns,
        "data": {name: table.column(name) for name in table.columns},
    }


def _open(path: Path):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        return path.open("w", encoding="utf-8", newline="")
    except OSError as e:
        raise OutputError(f"Cannot write {path}: {e.strerror or e}") from e


def write_csv(table: Table, path: Path) -> Path:
    with _open(path) as handle:
        handle.write("# " + json.dumps(table.metadata, sort_keys=True) + "\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([format_cell(value) for value in row])
    logger.info(f"[Output] wrote {len(table.rows)} rows to {path}")
    return path


def write_json(document: dict[str, Any], path: Path) -> Path:
    with _open(path) as handle:
        json.dump(document, handle, sort_keys=True, indent=2, allow_nan=False)
        handle.write("\n")
    logger.info(f"[Output] wrote {path}")
    return path


def write_tables(tables: dict[str, Table], path: Path, fmt: str) -> list[Path]:
    """
    Write one or two tables (the sweep adds a `width` table).

    CSV puts every table after the first in a sibling file named
    `<stem>-<name><suffix>`; JSON keeps them in one document.
    """
    names = list(tables)
    if fmt == "json":
        if len(names) == 1:
            return [write_json(table_document(tables[names[0]]), path)]
        return [write_json({name: table_document(table) for name, table in tables.items()}, path)]
    written = [write_csv(tables[names[0]], path)]
    for name in names[1:]:
        written.append(write_csv(tables[name], path.with_name(f"{path.stem}-{name}{path.suffix}")))
    return written
