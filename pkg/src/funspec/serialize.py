"""On-disk formats: delimited numeric tables plus JSON metadata.

Numbers are written with 17 significant digits, which round-trips IEEE
doubles exactly, so reading a file back reproduces the in-memory arrays
bit for bit.  JSON documents are written with sorted keys and a trailing
newline so identical content yields identical bytes.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import DataFormatError
from .numcore import FunctionalSeries, Grid

_UNIFORM_GRID_TOL = 1e-9


def fmt(x: float) -> str:
    """17-significant-digit decimal form (exact float64 round trip)."""
    return format(float(x), ".17g")


def write_matrix_csv(path, matrix: np.ndarray) -> None:
    """Write a real 2-d array, one CSV row per matrix row."""
    matrix = np.asarray(matrix)
    lines = [",".join(fmt(v) for v in row) for row in matrix]
    Path(path).write_text("\n".join(lines) + "\n")


def read_matrix_csv(path) -> np.ndarray:
    """Read a rectangular numeric CSV written by ``write_matrix_csv``.

    Raises
    ------
    DataFormatError
        On ragged rows or unparseable fields, identifying row/column.
    """
    rows = []
    width = None
    text = Path(path).read_text()
    for i, line in enumerate(text.splitlines()):
        if not line.strip():
            continue
        fields = line.split(",")
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise DataFormatError(
                f"{path}: row {i + 1} has {len(fields)} fields, expected {width}"
            )
        try:
            rows.append([float(f) for f in fields])
        except ValueError as exc:
            bad = next(j for j, f in enumerate(fields) if not _is_float(f))
            raise DataFormatError(
                f"{path}: row {i + 1}, column {bad + 1}: not a number"
            ) from exc
    if not rows:
        raise DataFormatError(f"{path}: no data rows")
    return np.array(rows)


def _is_float(s: str) -> bool:
    try:
        float(s)
        return True
    except ValueError:
        return False


def write_series_csv(path, series: FunctionalSeries) -> None:
    """Series file: header row of grid points, then one row per time index."""
    header = ",".join(fmt(v) for v in series.grid.points)
    body = "\n".join(",".join(fmt(v) for v in row) for row in series.data)
    Path(path).write_text(header + "\n" + body + "\n")


def read_series_csv(path) -> FunctionalSeries:
    """Read a series file; the header must be a uniform grid on [0, 1]."""
    table = read_matrix_csv(path)
    if table.shape[0] < 2:
        raise DataFormatError(f"{path}: need a header row plus at least one data row")
    points = table[0]
    m = points.size
    if np.max(np.abs(points - np.linspace(0.0, 1.0, m))) > _UNIFORM_GRID_TOL:
        raise DataFormatError(f"{path}: header is not the uniform grid on [0, 1]")
    return FunctionalSeries(Grid.uniform(m), table[1:])


def write_complex_matrix(prefix, kernel: np.ndarray) -> tuple[str, str]:
    """Write a complex matrix as parallel `<prefix>_re.csv` / `<prefix>_im.csv`."""
    re_path = f"{prefix}_re.csv"
    im_path = f"{prefix}_im.csv"
    write_matrix_csv(re_path, np.asarray(kernel).real)
    write_matrix_csv(im_path, np.asarray(kernel).imag)
    return re_path, im_path


def read_complex_matrix(prefix) -> np.ndarray:
    real = read_matrix_csv(f"{prefix}_re.csv")
    imag = read_matrix_csv(f"{prefix}_im.csv")
    if real.shape != imag.shape:
        raise DataFormatError(f"{prefix}: real/imag parts have different shapes")
    return real + 1j * imag


def write_json(path, doc: dict) -> None:
    Path(path).write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"{path}: invalid JSON: {exc}") from exc
