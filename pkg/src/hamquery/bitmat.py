"""Exact integer linear algebra over dense 0/1 matrices.

Everything is backed by ``int64`` numpy arrays.  Products are checked
against an a-priori magnitude bound so that an overflow is reported instead
of silently wrapping around.

Matrix text format::

    m n
    <m lines of exactly n characters from {0,1}>

Every line is newline-terminated and carries no trailing whitespace.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, FormatError

_INT64_SAFE = 2**62


class BinaryMatrix:
    """Immutable dense 0/1 matrix; rows are queries, columns are bits."""

    __slots__ = ("_a",)

    def __init__(self, data) -> None:
        a = np.array(data, dtype=np.int64)
        if a.ndim != 2:
            raise DimensionError(f"expected a 2-d array, got {a.ndim}-d")
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise DimensionError(f"matrix must have at least one row and column, got {a.shape}")
        if not np.isin(a, (0, 1)).all():
            raise ValueError("binary matrix entries must be 0 or 1")
        a.setflags(write=False)
        self._a = a

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(np.eye(n, dtype=np.int64))

    @classmethod
    def from_rows(cls, rows: Iterable[str]) -> "BinaryMatrix":
        """Build from strings such as ``"1100"``."""
        return cls([[int(ch) for ch in row] for row in rows])

    @property
    def array(self) -> np.ndarray:
        """Read-only ``int64`` view of the entries."""
        return self._a

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def T(self) -> "BinaryMatrix":
        return BinaryMatrix(self._a.T)

    def row(self, i: int) -> np.ndarray:
        return self._a[i]

    def column(self, j: int) -> np.ndarray:
        return self._a[:, j]

    def row_weights(self) -> np.ndarray:
        return self._a.sum(axis=1)

    def column_weights(self) -> np.ndarray:
        return self._a.sum(axis=0)

    def row_strings(self) -> list[str]:
        return ["".join("1" if v else "0" for v in row) for row in self._a]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self) -> int:
        return hash((self.shape, self._a.tobytes()))

    def __repr__(self) -> str:
        return f"BinaryMatrix({self.rows}x{self.cols})"

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}", *self.row_strings()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BinaryMatrix":
        if not text.endswith("\n"):
            raise FormatError("matrix text must be newline-terminated")
        lines = text[:-1].split("\n")
        matrix, end = parse_matrix_lines(lines, 0)
        if end != len(lines):
            raise FormatError(f"unexpected content after {matrix.rows} matrix rows")
        return matrix

    def save(self, path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def load(cls, path) -> "BinaryMatrix":
        return cls.from_text(Path(path).read_text())


def parse_matrix_lines(lines: Sequence[str], start: int) -> tuple[BinaryMatrix, int]:
    """Parse one matrix beginning at ``lines[start]``.

    Returns the matrix and the index of the first line after it.  Used by
    file formats that embed several matrices.
    """
    if start >= len(lines):
        raise FormatError("missing matrix header")
    header = lines[start]
    parts = header.split(" ")
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise FormatError(f"bad matrix header {header!r}; expected 'm n'")
    m, n = int(parts[0]), int(parts[1])
    if m < 1 or n < 1:
        raise FormatError(f"matrix dimensions must be positive, got {m}x{n}")
    body = lines[start + 1 : start + 1 + m]
    if len(body) != m:
        raise FormatError(f"expected {m} matrix rows, found {len(body)}")
    for k, row in enumerate(body):
        if len(row) != n or set(row) - {"0", "1"}:
            raise FormatError(f"matrix row {k + 1} must be {n} characters from {{0,1}}: {row!r}")
    return BinaryMatrix.from_rows(body), start + 1 + m


def _as_int_array(x) -> np.ndarray:
    if isinstance(x, BinaryMatrix):
        return x.array
    a = np.asarray(x)
    if a.dtype == object or not np.issubdtype(a.dtype, np.integer):
        if a.size and not np.all(np.equal(np.mod(a, 1), 0)):
            raise ValueError("expected integer entries")
        a = a.astype(np.int64)
    return a.astype(np.int64, copy=False)


def _check_product_bound(a: np.ndarray, b: np.ndarray) -> None:
    if a.size == 0 or b.size == 0:
        return
    bound = int(np.abs(a).max()) * int(np.abs(b).max()) * a.shape[-1]
    if bound >= _INT64_SAFE:
        raise OverflowError(f"integer product may exceed 64-bit range (bound {bound})")


def matvec(M, v) -> np.ndarray:
    """Exact integer product ``M @ v`` over the integers (not mod 2).

    ``v`` may be a vector of length ``cols(M)`` or a 2-d array whose
    columns are such vectors.
    """
    a = _as_int_array(M)
    x = _as_int_array(v)
    if a.ndim != 2 or x.ndim not in (1, 2) or a.shape[1] != x.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {x.shape}")
    _check_product_bound(a, x)
    return a @ x


def gram(C) -> np.ndarray:
    """Return ``C @ C.T`` as an integer matrix."""
    a = _as_int_array(C)
    _check_product_bound(a, a)
    return a @ a.T


def block_compose(blocks: Sequence[Sequence]) -> BinaryMatrix:
    """Assemble a block matrix from a grid of conformal 0/1 blocks."""
    if not blocks or not all(blocks):
        raise DimensionError("block grid must be non-empty")
    grid = [[_as_int_array(b) for b in brow] for brow in blocks]
    widths = [b.shape[1] for b in grid[0]]
    for i, brow in enumerate(grid):
        if any(b.ndim != 2 for b in brow):
            raise DimensionError("every block must be 2-d")
        if len(brow) != len(widths):
            raise DimensionError(f"block row {i} has {len(brow)} blocks, expected {len(widths)}")
        if len({b.shape[0] for b in brow}) != 1:
            raise DimensionError(f"blocks in block row {i} have different heights")
        if [b.shape[1] for b in brow] != widths:
            raise DimensionError(f"block row {i} column widths do not match block row 0")
    return BinaryMatrix(np.block(grid))


def column_subset_sum(M: BinaryMatrix, S: Iterable[int]) -> np.ndarray:
    """Sum of the columns of ``M`` indexed (0-based) by ``S``."""
    idx = sorted(set(S))
    if any(j < 0 or j >= M.cols for j in idx):
        raise IndexError(f"column index out of range 0..{M.cols - 1}: {idx}")
    return M.array[:, idx].sum(axis=1)


def _binary_vector(x) -> np.ndarray:
    a = np.asarray(x, dtype=np.int64)
    if a.ndim != 1:
        raise DimensionError("expected a 1-d binary vector")
    if not np.isin(a, (0, 1)).all():
        raise ValueError("binary vector entries must be 0 or 1")
    return a


def _pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    a, b = _binary_vector(x), _binary_vector(y)
    if a.shape != b.shape:
        raise DimensionError(f"length mismatch: {a.size} vs {b.size}")
    return a, b


def weight(x) -> int:
    return int(_binary_vector(x).sum())


def hamming_distance(x, y) -> int:
    a, b = _pair(x, y)
    return int(np.count_nonzero(a != b))


def overlap(x, y) -> int:
    """Weight of the elementwise product of two binary vectors."""
    a, b = _pair(x, y)
    return int(a @ b)


def parse_bits(text: str) -> np.ndarray:
    """Parse a '0'/'1' string (surrounding whitespace ignored) into a vector."""
    s = text.strip()
    if not s or set(s) - {"0", "1"}:
        raise FormatError("expected a non-empty string of '0'/'1' characters")
    return np.fromiter((ch == "1" for ch in s), dtype=np.int64, count=len(s))


def format_bits(x) -> str:
    return "".join("1" if v else "0" for v in _binary_vector(x))
