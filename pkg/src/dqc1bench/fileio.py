"""Flat-file formats for matrices, density matrices, GF(2) matrices, and CSV.

Formats (lines starting with '#' are comments, blank lines ignored):

.cmat   line 1: integer d; then d lines of 2d whitespace-separated floats,
        real and imaginary parts interleaved. Floats are written with
        shortest-round-trip printing, so write/read is bit-exact.
.dmat   line 1: space-separated subsystem dimensions; then a complete .cmat
        body (its own size line included) for the full matrix.
.gf2    line 1: "m n"; then m lines of n characters from {0, 1}.
csv     header row, then rows of 17-significant-digit decimal values.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np

from .linalg import DensityMatrix
from .qswe import Gf2Matrix

PathLike = Union[str, Path]


class FileFormatError(ValueError):
    """Raised on malformed input files; the message names the file and line."""


def _content_lines(path: PathLike) -> list[tuple[int, str]]:
    out = []
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        out.append((lineno, line))
    return out


def _fail(path: PathLike, lineno: int, message: str) -> FileFormatError:
    return FileFormatError(f"{path}:{lineno}: {message}")


def _format_float(x: float) -> str:
    return repr(float(x))


def write_cmat(path: PathLike, matrix: np.ndarray) -> None:
    mat = np.asarray(matrix, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("only square matrices are supported")
    d = mat.shape[0]
    lines = [str(d)]
    for i in range(d):
        parts = []
        for j in range(d):
            parts.append(_format_float(mat[i, j].real))
            parts.append(_format_float(mat[i, j].imag))
        lines.append(" ".join(parts))
    Path(path).write_text("\n".join(lines) + "\n")


def _parse_cmat_lines(path: PathLike, lines: list[tuple[int, str]]) -> np.ndarray:
    if not lines:
        raise _fail(path, 1, "empty matrix file")
    lineno, head = lines[0]
    try:
        d = int(head)
    except ValueError:
        raise _fail(path, lineno, f"expected integer dimension, got {head!r}") from None
    if d < 1:
        raise _fail(path, lineno, f"dimension must be positive, got {d}")
    if len(lines) - 1 != d:
        raise _fail(path, lineno, f"expected {d} matrix rows, found {len(lines) - 1}")
    mat = np.zeros((d, d), dtype=complex)
    for i, (row_lineno, row) in enumerate(lines[1:]):
        fields = row.split()
        if len(fields) != 2 * d:
            raise _fail(path, row_lineno, f"expected {2 * d} fields, found {len(fields)}")
        try:
            vals = [float(f) for f in fields]
        except ValueError as exc:
            raise _fail(path, row_lineno, f"bad float field: {exc}") from None
        mat[i] = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
    return mat


def read_cmat(path: PathLike) -> np.ndarray:
    return _parse_cmat_lines(path, _content_lines(path))


def write_dmat(path: PathLike, rho: DensityMatrix) -> None:
    d = rho.dim
    lines = [" ".join(str(x) for x in rho.dims), str(d)]
    for i in range(d):
        parts = []
        for j in range(d):
            parts.append(_format_float(rho.matrix[i, j].real))
            parts.append(_format_float(rho.matrix[i, j].imag))
        lines.append(" ".join(parts))
    Path(path).write_text("\n".join(lines) + "\n")


def read_dmat(path: PathLike) -> DensityMatrix:
    lines = _content_lines(path)
    if not lines:
        raise _fail(path, 1, "empty density-matrix file")
    lineno, head = lines[0]
    try:
        dims = tuple(int(tok) for tok in head.split())
    except ValueError:
        raise _fail(path, lineno, f"bad subsystem dimensions: {head!r}") from None
    mat = _parse_cmat_lines(path, lines[1:])
    if mat.shape[0] != math.prod(dims):
        raise _fail(
            path, lineno, f"dims {dims} imply dimension {math.prod(dims)}, matrix is {mat.shape[0]}"
        )
    try:
        return DensityMatrix(mat, dims)
    except ValueError as exc:
        raise _fail(path, lineno, f"not a valid density matrix: {exc}") from None


def write_gf2(path: PathLike, mat: Gf2Matrix) -> None:
    lines = [f"{mat.m} {mat.n}"]
    for i in range(mat.m):
        lines.append("".join(str(mat.entry(i, j)) for j in range(mat.n)))
    Path(path).write_text("\n".join(lines) + "\n")


def read_gf2(path: PathLike) -> Gf2Matrix:
    lines = _content_lines(path)
    if not lines:
        raise _fail(path, 1, "empty GF(2) matrix file")
    lineno, head = lines[0]
    fields = head.split()
    if len(fields) != 2:
        raise _fail(path, lineno, f"expected 'm n' header, got {head!r}")
    try:
        m, n = int(fields[0]), int(fields[1])
    except ValueError:
        raise _fail(path, lineno, f"bad header integers: {head!r}") from None
    if len(lines) - 1 != m:
        raise _fail(path, lineno, f"expected {m} rows, found {len(lines) - 1}")
    rows = []
    for row_lineno, row in lines[1:]:
        if len(row) != n or any(ch not in "01" for ch in row):
            raise _fail(path, row_lineno, f"expected {n} characters from {{0,1}}, got {row!r}")
        rows.append(int(row[::-1], 2) if row else 0)
    return Gf2Matrix(m=m, n=n, rows=tuple(rows))


def write_csv(path: PathLike, header: Sequence[str], rows: Iterable[Sequence[float]]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(f"{float(x):.17g}" for x in row))
    Path(path).write_text("\n".join(lines) + "\n")


def read_csv(path: PathLike) -> tuple[list[str], list[list[float]]]:
    lines = _content_lines(path)
    if not lines:
        raise _fail(path, 1, "empty CSV file")
    header = lines[0][1].split(",")
    rows = []
    for lineno, line in lines[1:]:
        fields = line.split(",")
        if len(fields) != len(header):
            raise _fail(path, lineno, f"expected {len(header)} columns, found {len(fields)}")
        try:
            rows.append([float(f) for f in fields])
        except ValueError as exc:
            raise _fail(path, lineno, f"bad float field: {exc}") from None
    return header, rows
