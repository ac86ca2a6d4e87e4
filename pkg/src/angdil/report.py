"""Deterministic CSV / JSON table writers."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path


def fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float) or hasattr(value, "dtype"):
        x = float(value)
        return "" if math.isnan(x) else f"{x:.17g}"
    return str(value)


def _jsonable(value):
    if isinstance(value, bool):
        return value
    if hasattr(value, "item"):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def write_csv(path, rows: list[dict], columns: list[str]) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([fmt(row[c]) for c in columns])
    return path


def write_json(path, rows: list[dict], columns: list[str], extra: dict | None = None) -> Path:
    path = Path(path)
    payload = {"columns": columns, "rows": [{c: _jsonable(row[c]) for c in columns} for row in rows]}
    for key, value in (extra or {}).items():
        payload[key] = value
    path.write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")
    return path


def write_tables(directory, stem: str, rows, columns, formats, extra: dict | None = None) -> list[Path]:
    directory = Path(directory)
    written = []
    if "csv" in formats:
        written.append(write_csv(directory / f"{stem}.csv", rows, columns))
    if "json" in formats:
        written.append(write_json(directory / f"{stem}.json", rows, columns, extra))
    return written


def read_csv(path) -> list[dict]:
    with open(path, encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))
