"""CSV and JSON serialization with round-trip-exact floats."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from manyopt.errors import DomainError

FLOAT_FORMAT = "{:.17g}"


def format_float(x: float) -> str:
    return FLOAT_FORMAT.format(float(x))


def write_matrix_csv(path, rows, header: list[str] | None = None, comments: list[str] = ()) -> Path:
    """Write a 2-D array with 17 significant digits per value."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        for c in comments:
            fh.write(f"# {c}\n")
        w = csv.writer(fh, lineterminator="\n")
        if header:
            w.writerow(header)
        for row in np.atleast_2d(rows):
            w.writerow([format_float(v) for v in row])
    return path


def matrix_to_csv_text(rows) -> str:
    return "".join(",".join(format_float(v) for v in row) + "\n" for row in np.atleast_2d(rows))


def read_front_csv(path) -> np.ndarray:
    """Read one point per row; ``#`` comment lines and a non-numeric header row are skipped."""
    rows = []
    with Path(path).open(newline="") as fh:
        for line_no, row in enumerate(csv.reader(fh), start=1):
            if not row or row[0].lstrip().startswith("#"):
                continue
            try:
                rows.append([float(v) for v in row])
            except ValueError:
                if rows:
                    raise DomainError(f"{path}:{line_no}: non-numeric value in front file") from None
    if not rows:
        raise DomainError(f"{path}: no points found")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise DomainError(f"{path}: rows have differing lengths {sorted(widths)}")
    return np.array(rows, dtype=float)


def dump_json(obj, path=None) -> str:
    """Canonical JSON text (sorted keys, fixed indentation, trailing newline)."""
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path is not None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    return text
