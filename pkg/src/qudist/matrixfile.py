"""JSON matrix files: ``{"dim": n, "matrix": [[[re, im], ...], ...]}`` (row-major)."""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import QudistError


class MatrixFileError(QudistError):
    """The file is not a well-formed matrix file."""


def _entry(value, where: str) -> complex:
    if (not isinstance(value, list) or len(value) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)):
        raise MatrixFileError(f"{where}: expected [re, im] pair of numbers, got {json.dumps(value)}")
    re, im = float(value[0]), float(value[1])
    if not (math.isfinite(re) and math.isfinite(im)):
        raise MatrixFileError(f"{where}: non-finite entry")
    return complex(re, im)


def parse_matrix(text: str, source: str = "<string>") -> np.ndarray:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or "dim" not in doc or "matrix" not in doc:
        raise MatrixFileError(f"{source}: expected an object with keys 'dim' and 'matrix'")
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise MatrixFileError(f"{source}: 'dim' must be a positive integer, got {json.dumps(dim)}")
    rows = doc["matrix"]
    if not isinstance(rows, list) or len(rows) != dim:
        raise MatrixFileError(f"{source}: 'matrix' must be a list of {dim} rows")
    out = np.empty((dim, dim), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise MatrixFileError(f"{source}: matrix[{i}] must be a list of {dim} entries")
        for j, value in enumerate(row):
            out[i, j] = _entry(value, f"{source}: matrix[{i}][{j}]")
    return out


def read_matrix(path) -> np.ndarray:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise MatrixFileError(f"{path}: cannot read: {exc}") from None
    return parse_matrix(text, str(path))


def format_matrix(a) -> str:
    """Serialize with one row per line; ``repr`` floats so reading back is exact."""
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"matrix must be square, got {a.shape}")
    lines = []
    for row in a:
        cells = ", ".join(f"[{float(z.real)!r}, {float(z.imag)!r}]" for z in row)
        lines.append(f"    [{cells}]")
    return '{\n  "dim": %d,\n  "matrix": [\n%s\n  ]\n}\n' % (n, ",\n".join(lines))


def write_matrix(path, a) -> None:
    Path(path).write_text(format_matrix(a), encoding="utf-8", newline="\n")
