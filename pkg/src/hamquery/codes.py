"""Constant-weight codes used as the ``C`` blocks of the query matrices.

Codes come from three places: all weight-2 tuples (level 1), incidence
matrices of published block designs, and a lexicographic greedy packing
when no design file is at hand.

Block-design text format: ``#`` starts a comment line, an optional
``v=<int>`` header may precede the blocks, then one block per line as
whitespace-separated decimal point indices (0-based unless loaded with
``one_based=True``).
"""

from __future__ import annotations

import itertools
from importlib import resources
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .bitmat import BinaryMatrix, gram
from .errors import FormatError, ValidationError


@dataclass(frozen=True)
class BlockDesign:
    v: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.blocks:
            raise ValidationError("design has no blocks")
        sizes = {len(b) for b in self.blocks}
        if len(sizes) != 1:
            raise ValidationError(f"ragged block sizes {sorted(sizes)}")
        seen = set()
        for b in self.blocks:
            if len(set(b)) != len(b):
                raise ValidationError(f"block {b} repeats a point")
            if min(b) < 0 or max(b) >= self.v:
                raise ValidationError(f"block {b} has a point outside 0..{self.v - 1}")
            key = frozenset(b)
            if key in seen:
                raise ValidationError(f"duplicate block {b}")
            seen.add(key)

    @property
    def k(self) -> int:
        return len(self.blocks[0])

    @property
    def b(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class ConstantWeightCode:
    """Rows of ``matrix`` all have Hamming weight ``weight``.

    ``min_distance`` is the smallest pairwise distance between rows, or
    ``None`` for a one-row code.
    """

    matrix: BinaryMatrix
    weight: int
    min_distance: Optional[int]

    @classmethod
    def from_matrix(cls, matrix: BinaryMatrix) -> "ConstantWeightCode":
        weights = set(matrix.row_weights().tolist())
        if len(weights) != 1:
            raise ValidationError(f"rows have differing weights {sorted(weights)}")
        (w,) = weights
        return cls(matrix, int(w), _min_distance(matrix))

    @property
    def rows(self) -> int:
        return self.matrix.rows

    @property
    def length(self) -> int:
        return self.matrix.cols

    def first_rows(self, count: int) -> "ConstantWeightCode":
        """Keep the first ``count`` rows (file order)."""
        if count > self.rows:
            raise ValidationError(f"code has {self.rows} rows, {count} requested")
        return ConstantWeightCode.from_matrix(BinaryMatrix(self.matrix.array[:count]))


def _min_distance(matrix: BinaryMatrix) -> Optional[int]:
    if matrix.rows < 2:
        return None
    w = matrix.row_weights()
    d = w[:, None] + w[None, :] - 2 * gram(matrix)
    np.fill_diagonal(d, np.iinfo(np.int64).max)
    return int(d.min())


def weight2_rows(r: int) -> ConstantWeightCode:
    """All weight-2 binary r-tuples, supports in lexicographic order."""
    if r < 2:
        raise ValueError(f"r must be at least 2, got {r}")
    pairs = list(itertools.combinations(range(r), 2))
    a = np.zeros((len(pairs), r), dtype=np.int64)
    for i, (p, q) in enumerate(pairs):
        a[i, p] = a[i, q] = 1
    return ConstantWeightCode.from_matrix(BinaryMatrix(a))


def parse_blocks(text: str, one_based: bool = False) -> BlockDesign:
    v = None
    blocks = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("v="):
            if blocks or v is not None:
                raise FormatError(f"line {lineno}: 'v=' header must precede the blocks")
            try:
                v = int(line[2:])
            except ValueError:
                raise FormatError(f"line {lineno}: bad header {line!r}") from None
            continue
        try:
            pts = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer token in {line!r}") from None
        if one_based:
            if min(pts) < 1:
                raise FormatError(f"line {lineno}: index 0 in a one-based file")
            pts = tuple(p - 1 for p in pts)
        blocks.append(pts)
    if not blocks:
        raise FormatError("design file has no blocks")
    if v is None:
        v = max(max(b) for b in blocks) + 1
    return BlockDesign(v, tuple(blocks))


def load_blocks(path, one_based: bool = False) -> BlockDesign:
    return parse_blocks(Path(path).read_text(), one_based=one_based)


BUNDLED_DESIGNS = ("s2_4_25", "s2_8_64")


def bundled_design(name: str) -> BlockDesign:
    """Load one of the Steiner systems shipped in ``hamquery/data``."""
    if name not in BUNDLED_DESIGNS:
        raise ValueError(f"unknown bundled design {name!r}; choose from {BUNDLED_DESIGNS}")
    text = resources.files("hamquery").joinpath("data", f"{name}.txt").read_text()
    return parse_blocks(text)


def format_blocks(design: BlockDesign, comments: tuple[str, ...] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"v={design.v}")
    lines.extend(" ".join(str(p) for p in b) for b in design.blocks)
    return "\n".join(lines) + "\n"


def incidence(design: BlockDesign) -> ConstantWeightCode:
    a = np.zeros((design.b, design.v), dtype=np.int64)
    for i, block in enumerate(design.blocks):
        a[i, list(block)] = 1
    return ConstantWeightCode.from_matrix(BinaryMatrix(a))


def blocks_of(code: ConstantWeightCode) -> BlockDesign:
    """Inverse of :func:`incidence`."""
    blocks = tuple(tuple(int(j) for j in np.flatnonzero(row)) for row in code.matrix.array)
    return BlockDesign(code.length, blocks)


def _first_compatible(v: int, w: int, adj: list[int]) -> Optional[tuple[int, ...]]:
    # Lexicographically first w-subset using no already-covered pair.
    chosen: list[int] = []

    def extend(cand: int) -> bool:
        need = w - len(chosen)
        if need == 0:
            return True
        while cand and cand.bit_count() >= need:
            low = cand & -cand
            p = low.bit_length() - 1
            cand ^= low
            chosen.append(p)
            if extend(cand & ~adj[p]):
                return True
            chosen.pop()
        return False

    return tuple(chosen) if extend((1 << v) - 1) else None


def greedy_packing(v: int, w: int, target_rows: int) -> ConstantWeightCode:
    """Lexicographic greedy packing of weight-``w`` subsets of ``v`` points.

    A subset is kept iff it meets every kept subset in at most one point;
    the scan stops after ``target_rows`` blocks or when nothing fits, so the
    caller must check how many rows came back.
    """
    if not v >= w >= 1:
        raise ValueError(f"need v >= w >= 1, got v={v}, w={w}")
    if target_rows < 1:
        raise ValueError(f"target_rows must be positive, got {target_rows}")
    if w == 1:
        blocks = [(p,) for p in range(min(v, target_rows))]
    else:
        adj = [0] * v
        blocks = []
        while len(blocks) < target_rows:
            b = _first_compatible(v, w, adj)
            if b is None:
                break
            blocks.append(b)
            mask = sum(1 << p for p in b)
            for p in b:
                adj[p] |= mask & ~(1 << p)
    return incidence(BlockDesign(v, tuple(blocks)))


def min_points_for(rows: int, w: int) -> int:
    """Smallest v that could host ``rows`` weight-``w`` blocks with overlap <= 1."""
    v = w
    while True:
        per_point = (v - 1) // (w - 1) if w > 1 else rows
        if rows * (w * (w - 1) // 2) <= v * (v - 1) // 2 and rows * w <= v * per_point:
            return v
        v += 1


def greedy_code(rows: int, w: int, v_max: int = 1024) -> ConstantWeightCode:
    """Grow ``v`` until :func:`greedy_packing` yields ``rows`` blocks."""
    v = min_points_for(rows, w)
    while v <= v_max:
        code = greedy_packing(v, w, rows)
        if code.rows >= rows:
            return code
        v += 1
    raise ValidationError(f"greedy packing could not reach {rows} weight-{w} rows within v <= {v_max}")


@dataclass(frozen=True)
class CodeReport:
    ok: bool
    message: str
    row: Optional[int] = None
    pair: Optional[tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.ok


def validate_cw(code, w: int, dmin: int) -> CodeReport:
    """Check constant weight ``w`` and pairwise distance ``>= dmin``.

    Accepts a :class:`ConstantWeightCode` or a bare :class:`BinaryMatrix`
    and reports the first offending row or pair.
    """
    matrix = code.matrix if isinstance(code, ConstantWeightCode) else code
    weights = matrix.row_weights()
    bad = np.flatnonzero(weights != w)
    if bad.size:
        i = int(bad[0])
        return CodeReport(False, f"row {i} has weight {int(weights[i])}, expected {w}", row=i)
    if matrix.rows > 1:
        d = weights[:, None] + weights[None, :] - 2 * gram(matrix)
        iu, ju = np.triu_indices(matrix.rows, k=1)
        low = np.flatnonzero(d[iu, ju] < dmin)
        if low.size:
            i, j = int(iu[low[0]]), int(ju[low[0]])
            return CodeReport(
                False, f"rows {i} and {j} are at distance {int(d[i, j])} < {dmin}", pair=(i, j)
            )
    return CodeReport(True, f"{matrix.rows} rows of weight {w}, pairwise distance >= {dmin}")
