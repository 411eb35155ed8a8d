"""CSV field dumps and JSON report files."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np


def write_field_csv(path, x: np.ndarray, y: np.ndarray, values: np.ndarray) -> Path:
    """Rows of (x, y, value) for a field sampled on the x-by-y grid."""
    values = np.asarray(values, dtype=float)
    if values.shape != (len(x), len(y)):
        raise ValueError(f"field shape {values.shape} does not match grid ({len(x)}, {len(y)})")
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(("x", "y", "value"))
        for i, xv in enumerate(x):
            for j, yv in enumerate(y):
                w.writerow((repr(float(xv)), repr(float(yv)), repr(float(values[i, j]))))
    return path


def read_field_csv(path) -> tuple:
    """Inverse of :func:`write_field_csv`: returns (x, y, values)."""
    with Path(path).open(newline="") as fh:
        rows = [tuple(map(float, r)) for r in list(csv.reader(fh))[1:]]
    xs = np.array(sorted({r[0] for r in rows}))
    ys = np.array(sorted({r[1] for r in rows}))
    out = np.empty((len(xs), len(ys)))
    xi = {v: i for i, v in enumerate(xs)}
    yi = {v: j for j, v in enumerate(ys)}
    for xv, yv, val in rows:
        out[xi[xv], yi[yv]] = val
    return xs, ys, out


def write_json(path, payload) -> Path:
    path = Path(path)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path
