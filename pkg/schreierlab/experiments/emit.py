from typing import Iterable, List
import csv
import io
import json
import logging
from schreierlab.experiments.sweep import CSV_HEADER, ResultRow

logger = logging.getLogger(__name__)


def format_csv(rows: Iterable[ResultRow]) -> str:
    """CSV text with the fixed header; missing values are empty cells"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.csv_fields())
    return buffer.getvalue()


def format_json(rows: Iterable[ResultRow]) -> str:
    return json.dumps([row.to_dict() for row in rows], indent=2) + "\n"


def _write(text: str, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)


def emit_csv(rows: List[ResultRow], path: str) -> None:
    _write(format_csv(rows), path)
    logger.info("Wrote %d rows to %s", len(rows), path)


def emit_json(rows: List[ResultRow], path: str) -> None:
    _write(format_json(rows), path)
    logger.info("Wrote %d rows to %s", len(rows), path)
