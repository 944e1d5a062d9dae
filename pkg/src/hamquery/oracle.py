"""Simulated Hamming and overlap oracles over a hidden binary vector.

Random hidden vectors come from ``numpy.random.default_rng(seed)`` (the
PCG64 bit generator) drawing ``rng.integers(0, 2, size=n)``; the same seed
always yields the same vectors.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .bitmat import BinaryMatrix, _binary_vector, hamming_distance, matvec, overlap, parse_bits
from .errors import DimensionError, InconsistentResponsesError

MODES = ("overlap", "hamming")


def hamming_to_overlap(d: int, wy: int, wx: int) -> int:
    """Convert a Hamming response into an overlap response.

    Uses ``d(x, y) = w(x) + w(y) - 2 w(x.y)``.
    """
    twice = wx + wy - d
    if twice < 0 or twice % 2:
        raise InconsistentResponsesError(
            f"no binary pair has d={d}, w(y)={wy}, w(x)={wx}"
        )
    ov = twice // 2
    if ov > min(wx, wy):
        raise InconsistentResponsesError(
            f"overlap {ov} exceeds a weight (w(y)={wy}, w(x)={wx})"
        )
    return ov


class OracleSession:
    """A hidden binary vector that can only be observed through queries."""

    def __init__(self, hidden) -> None:
        h = _binary_vector(hidden).copy()
        h.setflags(write=False)
        self._hidden = h
        self._hamming_queries = 0
        self._overlap_queries = 0

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "OracleSession":
        return cls(random_hidden(n, rng))

    @property
    def n(self) -> int:
        return self._hidden.size

    @property
    def hamming_queries(self) -> int:
        return self._hamming_queries

    @property
    def overlap_queries(self) -> int:
        return self._overlap_queries

    @property
    def total_queries(self) -> int:
        return self._hamming_queries + self._overlap_queries

    def _check(self, y) -> np.ndarray:
        q = _binary_vector(y)
        if q.size != self.n:
            raise DimensionError(f"query has length {q.size}, hidden vector has {self.n}")
        return q

    def query_hamming(self, y) -> int:
        q = self._check(y)
        self._hamming_queries += 1
        return hamming_distance(self._hidden, q)

    def query_overlap(self, y) -> int:
        q = self._check(y)
        self._overlap_queries += 1
        return overlap(self._hidden, q)

    def run_query_matrix(self, Q: BinaryMatrix, mode: str = "overlap") -> np.ndarray:
        """Pose every row of ``Q`` and return the overlap vector ``Q x``.

        In hamming mode the all-ones query is posed first to learn ``w(x)``,
        then each row's distance is converted, for ``rows(Q) + 1`` queries.
        """
        if Q.cols != self.n:
            raise DimensionError(f"query matrix has {Q.cols} columns, hidden vector has {self.n}")
        if mode == "overlap":
            self._overlap_queries += Q.rows
            return matvec(Q, self._hidden)
        if mode == "hamming":
            wx = self.n - self.query_hamming(np.ones(self.n, dtype=np.int64))
            d = self.hamming_responses(Q)
            return np.array(
                [hamming_to_overlap(int(di), int(wy), wx) for di, wy in zip(d, Q.row_weights())],
                dtype=np.int64,
            )
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")

    def hamming_responses(self, Q: BinaryMatrix) -> np.ndarray:
        """Raw Hamming distances to every row of ``Q`` (``rows(Q)`` queries)."""
        if Q.cols != self.n:
            raise DimensionError(f"query matrix has {Q.cols} columns, hidden vector has {self.n}")
        self._hamming_queries += Q.rows
        # d = w(x) + w(q) - 2 w(x.q), evaluated for all rows at once
        return int(self._hidden.sum()) + Q.row_weights() - 2 * matvec(Q, self._hidden)


def random_hidden(n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, 2, size=n, dtype=np.int64)


def load_vector(path) -> np.ndarray:
    return parse_bits(Path(path).read_text())
