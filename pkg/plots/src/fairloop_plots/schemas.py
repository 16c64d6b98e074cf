"""CSV schema contracts for each figure's input.

Inputs are the documented outputs of the fairloop experiment runner;
a column mismatch is a hard error naming the missing column, and a
file with a header but no data rows is an explicit empty-data error.
"""

from __future__ import annotations

import csv
from pathlib import Path


class SchemaError(Exception):
    """Input columns do not match the documented schema."""


class EmptyDataError(Exception):
    """Input parses but contains no data rows."""


#: Exact leading columns per figure; `...` columns (per-group families)
#: are validated by prefix.
REQUIRED_COLUMNS = {
    "polarization": ["t", "user_id", "x", "engagement"],
    "diversity": ["t", "user_id", "x", "engagement"],
    "tradeoff": ["epsilon", "mean_eng", "sd_eng", "mean_pol", "sd_pol"],
    "representation": ["t", "group", "count"],
    "creators_exposure": ["epsilon"],
    "creators_opportunity": ["epsilon"],
    "controller": ["t"],
}

PREFIX_FAMILIES = {
    "creators_exposure": ["exp_", "p_", "fut_u_"],
    "creators_opportunity": ["exp_", "p_", "fut_u_"],
    "controller": ["s_", "boost_"],
}

EXACT_EXTRAS = {
    "creators_exposure": ["utility", "status"],
    "creators_opportunity": ["utility", "status"],
    "controller": ["ranking", "utility"],
}

FIGURES = tuple(sorted(REQUIRED_COLUMNS))


def read_table(path: Path, figure: str) -> dict[str, list[str]]:
    """Load and validate one CSV; returns columns as string lists."""
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyDataError(f"{path}: no header row")
        rows = [row for row in reader if row]

    for col in REQUIRED_COLUMNS[figure]:
        if col not in header:
            raise SchemaError(f"{path}: required column {col!r} is missing "
                              f"for figure {figure!r}")
    for col in EXACT_EXTRAS.get(figure, []):
        if col not in header:
            raise SchemaError(f"{path}: required column {col!r} is missing "
                              f"for figure {figure!r}")
    for prefix in PREFIX_FAMILIES.get(figure, []):
        if not any(col.startswith(prefix) for col in header):
            raise SchemaError(f"{path}: no {prefix}* columns present "
                              f"for figure {figure!r}")
    if not rows:
        raise EmptyDataError(f"{path}: no data rows")

    table: dict[str, list[str]] = {col: [] for col in header}
    for row in rows:
        if len(row) != len(header):
            raise SchemaError(f"{path}: row width does not match the header")
        for col, value in zip(header, row):
            table[col].append(value)
    return table


def family_columns(table: dict, prefix: str) -> list[str]:
    """Column names of one per-group family, in numeric suffix order."""
    names = [c for c in table
             if c.startswith(prefix) and c[len(prefix):].isdigit()]
    return sorted(names, key=lambda c: int(c[len(prefix):]))


def floats(table: dict, column: str) -> list[float]:
    return [float(v) if v != "" else float("nan") for v in table[column]]
