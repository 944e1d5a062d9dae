"""Recursive query matrices ``Q_s(r)``.

Level 1 is::

    Q_1 = [ I_k  C_1  E_1  ]      k = C(r, 2), C_1 = all weight-2 r-tuples
          [ 0    I_r  C_1^T]

and level ``j >= 2`` wraps level ``j - 1``::

    Q_j = [ Q_{j-1}  C_j  E_j  ]
          [ 0        I    C_j^T]

where ``C_j`` has ``m_{j-1}`` rows of weight ``2**j`` meeting pairwise in at
most one point and ``E_j = C_j C_j^T - 2**j I``.  Level 0 is the identity of
size ``m_0 = C(r, 2)``.

Descriptor file format::

    r=<int> s=<int>
    [C2]
    <matrix text>
    [C3]
    ...

``C_1`` and every ``E_j`` are recomputed on load.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from pathlib import Path

import numpy as np

from .bitmat import BinaryMatrix, block_compose, gram, parse_matrix_lines
from .codes import ConstantWeightCode, validate_cw, weight2_rows
from .errors import FormatError, ValidationError


@dataclass(frozen=True)
class LevelView:
    j: int
    Q_prev: BinaryMatrix
    C: BinaryMatrix
    E: BinaryMatrix


def _e_block(C: BinaryMatrix, j: int) -> BinaryMatrix:
    E = gram(C) - (2**j) * np.eye(C.rows, dtype=np.int64)
    if not np.array_equal(E, E.T):
        raise ValidationError(f"E_{j} is not symmetric")
    if np.any(np.diag(E) != 0):
        raise ValidationError(f"E_{j} has a nonzero diagonal; rows of C_{j} must have weight {2**j}")
    if not np.isin(E, (0, 1)).all():
        i, k = np.argwhere((E != 0) & (E != 1))[0]
        raise ValidationError(
            f"E_{j} is not binary: rows {i} and {k} of C_{j} share {int(E[i, k])} points"
        )
    return BinaryMatrix(E)


class Construction:
    """Immutable descriptor of ``Q_s(r)`` with its flattened levels cached."""

    def __init__(self, r: int, c_blocks=()) -> None:
        if r < 3:
            raise ValueError(f"r must be at least 3, got {r}")
        self._r = r
        blocks = tuple(b.matrix if isinstance(b, ConstantWeightCode) else b for b in c_blocks)
        k = comb(r, 2)
        self._c = (weight2_rows(r).matrix, *blocks)
        self._e: list[BinaryMatrix] = []
        self._flat = [BinaryMatrix.identity(k)]
        for j, C in enumerate(self._c, start=1):
            prev = self._flat[-1]
            if C.rows != prev.rows:
                raise ValidationError(f"C_{j} has {C.rows} rows, level {j - 1} has {prev.rows}")
            if j >= 2:
                report = validate_cw(C, 2**j, 2 * (2**j - 1))
                if not report:
                    raise ValidationError(f"C_{j}: {report.message}")
            E = _e_block(C, j)
            self._e.append(E)
            zero = np.zeros((C.cols, prev.cols), dtype=np.int64)
            self._flat.append(
                block_compose([[prev, C, E], [zero, BinaryMatrix.identity(C.cols), C.T]])
            )

    @property
    def r(self) -> int:
        return self._r

    @property
    def s(self) -> int:
        return len(self._c)

    @property
    def c_blocks(self) -> tuple[BinaryMatrix, ...]:
        """``C_2 ... C_s`` (``C_1`` is implied by ``r``)."""
        return self._c[1:]

    @property
    def level_sizes(self) -> list[tuple[int, int]]:
        return [f.shape for f in self._flat]

    @property
    def m(self) -> int:
        return self._flat[-1].rows

    @property
    def n(self) -> int:
        return self._flat[-1].cols

    def c(self, j: int) -> BinaryMatrix:
        self._check_level(j, low=1)
        return self._c[j - 1]

    def e(self, j: int) -> BinaryMatrix:
        self._check_level(j, low=1)
        return self._e[j - 1]

    def flatten(self, j: int | None = None) -> BinaryMatrix:
        if j is None:
            j = self.s
        self._check_level(j, low=0)
        return self._flat[j]

    def level_view(self, j: int) -> LevelView:
        self._check_level(j, low=1)
        return LevelView(j, self._flat[j - 1], self._c[j - 1], self._e[j - 1])

    def query_ratio(self) -> Fraction:
        return Fraction(self.m, self.n)

    def _check_level(self, j: int, low: int) -> None:
        if not low <= j <= self.s:
            raise IndexError(f"level {j} out of range {low}..{self.s}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Construction):
            return NotImplemented
        return self._r == other._r and self._c == other._c

    def __hash__(self) -> int:
        return hash((self._r, self._c))

    def __repr__(self) -> str:
        return f"Construction(r={self.r}, s={self.s}, size={self.m}x{self.n})"

    def summary(self) -> str:
        ratio = self.query_ratio()
        return f"m={self.m} n={self.n} ratio={ratio.numerator}/{ratio.denominator}"

    def to_text(self) -> str:
        parts = [f"r={self.r} s={self.s}\n"]
        for j, C in enumerate(self.c_blocks, start=2):
            parts.append(f"[C{j}]\n")
            parts.append(C.to_text())
        return "".join(parts)

    @classmethod
    def from_text(cls, text: str) -> "Construction":
        if not text.endswith("\n"):
            raise FormatError("descriptor must be newline-terminated")
        lines = text[:-1].split("\n")
        head = lines[0].split(" ")
        try:
            if len(head) != 2 or not head[0].startswith("r=") or not head[1].startswith("s="):
                raise ValueError
            r, s = int(head[0][2:]), int(head[1][2:])
        except ValueError:
            raise FormatError(f"bad descriptor header {lines[0]!r}; expected 'r=<int> s=<int>'") from None
        if s < 1:
            raise FormatError(f"level count must be at least 1, got {s}")
        pos = 1
        blocks = []
        for j in range(2, s + 1):
            if pos >= len(lines) or lines[pos] != f"[C{j}]":
                raise FormatError(f"expected section header [C{j}]")
            C, pos = parse_matrix_lines(lines, pos + 1)
            blocks.append(C)
        if pos != len(lines):
            raise FormatError(f"unexpected content after level {s}: {lines[pos]!r}")
        return cls(r, blocks)


def build_q1(r: int) -> Construction:
    return Construction(r)


def extend(c: Construction, C_next) -> Construction:
    """Add one level on top of ``c`` using the code ``C_next``."""
    return Construction(c.r, (*c.c_blocks, C_next))


def flatten(c: Construction, level: int | None = None) -> BinaryMatrix:
    return c.flatten(level)


def query_ratio(c: Construction) -> Fraction:
    return c.query_ratio()


def q1_size(r: int) -> tuple[int, int]:
    k = comb(r, 2)
    return k + r, 2 * k + r


def save_construction(c: Construction, path) -> None:
    Path(path).write_text(c.to_text())


def load_construction(path) -> Construction:
    return Construction.from_text(Path(path).read_text())
