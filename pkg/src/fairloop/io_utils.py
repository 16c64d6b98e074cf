"""File formats: deterministic CSV/JSON writers and schema-checked loaders.

All CSV output uses comma separators, LF line endings, a '.' decimal
point, a header row, and reals printed with 17 significant digits so a
round trip through text is exact. Files are written atomically
(temp file in the same directory, then rename).
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .core import GroupPartition, RelevanceMatrix
from .errors import SchemaError


def format_real(x) -> str:
    """17-significant-digit decimal representation (round-trip exact)."""
    if isinstance(x, float) and np.isnan(x):
        return "nan"
    return format(float(x), ".17g")


def _cell(value) -> str:
    if isinstance(value, (float, np.floating)):
        return format_real(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def atomic_write_text(path: Path, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path: Path, header: list[str], rows) -> Path:
    """Write rows (iterables of cells) under a header, atomically."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_cell(v) for v in row))
    atomic_write_text(path, "\n".join(lines) + "\n")
    return Path(path)


def write_json(path: Path, payload) -> Path:
    atomic_write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return Path(path)


def sha256_of(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def read_csv_rows(path: Path) -> tuple[list[str], list[list[str]]]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: file is empty")
        return header, [row for row in reader if row]


def load_relevance_csv(path: Path) -> tuple[RelevanceMatrix, list[str], list[str]]:
    """Relevance matrix from CSV.

    Schema: header ``user,<item name 1>,<item name 2>,...``; one row
    per user: a user label followed by one relevance value per item.
    Column order defines item indices. Returns (matrix, users, items).
    """
    header, rows = read_csv_rows(path)
    if len(header) < 2 or header[0] != "user":
        raise SchemaError(f"{path}: expected header 'user,<item columns>'")
    items = header[1:]
    users, values = [], []
    for row in rows:
        if len(row) != len(header):
            raise SchemaError(f"{path}: row width does not match the header")
        users.append(row[0])
        values.append([float(v) for v in row[1:]])
    if not users:
        raise SchemaError(f"{path}: no user rows")
    return RelevanceMatrix(np.array(values)), users, items


def load_groups_csv(path: Path, items: list[str]) -> GroupPartition:
    """Group partition from CSV.

    Schema: header ``item,group``; one row per item mapping an item
    name (matching a relevance column) to a 1-based group index. Every
    relevance item must be mapped exactly once.
    """
    header, rows = read_csv_rows(path)
    if header != ["item", "group"]:
        raise SchemaError(f"{path}: expected header 'item,group'")
    mapping = {}
    for row in rows:
        if len(row) != 2:
            raise SchemaError(f"{path}: rows must be 'item,group'")
        name, group = row
        if name in mapping:
            raise SchemaError(f"{path}: item {name!r} mapped twice")
        mapping[name] = int(group)
    missing = [name for name in items if name not in mapping]
    if missing:
        raise SchemaError(f"{path}: items without a group: {missing}")
    extra = [name for name in mapping if name not in items]
    if extra:
        raise SchemaError(f"{path}: unknown items in group map: {extra}")
    assignment = np.array([mapping[name] for name in items], dtype=int)
    return GroupPartition(assignment, m=int(assignment.max()))


def load_relevance_stream_csv(path: Path) -> list[np.ndarray]:
    """Per-step relevance stream from CSV.

    Schema: header ``step,user,<item columns>``; one row per (step,
    user). Steps must be 1..T contiguous; users within a step must be
    0..k contiguous. Returns one matrix (users x items) per step.
    """
    header, rows = read_csv_rows(path)
    if len(header) < 3 or header[:2] != ["step", "user"]:
        raise SchemaError(f"{path}: expected header 'step,user,<item columns>'")
    by_step: dict[int, dict[int, list[float]]] = {}
    for row in rows:
        if len(row) != len(header):
            raise SchemaError(f"{path}: row width does not match the header")
        step, user = int(row[0]), int(row[1])
        by_step.setdefault(step, {})[user] = [float(v) for v in row[2:]]
    if sorted(by_step) != list(range(1, len(by_step) + 1)):
        raise SchemaError(f"{path}: steps must be contiguous starting at 1")
    stream = []
    for step in sorted(by_step):
        users = by_step[step]
        if sorted(users) != list(range(len(users))):
            raise SchemaError(f"{path}: users in step {step} must be contiguous from 0")
        stream.append(np.array([users[u] for u in sorted(users)]))
    return stream
