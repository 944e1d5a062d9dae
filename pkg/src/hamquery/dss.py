"""Distinct-subset-sum (DSS) sets and their binary-expansion matrices.

Column ``i`` of a DSS matrix is the binary expansion of the ``i``-th set
element with the least-significant bit in the first row.  Any DSS set
gives a UI matrix this way; the converse does not hold.

The best known DSS constructions reach ``r_n < 0.22002 * 2**n`` for the
largest element; the exponential set ``{1, 2, 4, ...}`` has ``2**(n-1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .bitmat import BinaryMatrix
from .errors import SearchLimitError

DSS_LIMIT = 25
BEST_KNOWN_DSS_CONSTANT = 0.22002


@dataclass(frozen=True)
class DSSWitness:
    """Two disjoint subsets (element values) with equal sums."""

    left: tuple[int, ...]
    right: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.left)

    def describe(self) -> str:
        side = lambda s: "+".join(str(v) for v in s) if s else "0"
        return f"{side(self.left)} = {side(self.right)}"


@dataclass(frozen=True)
class DSSResult:
    """Truthy when every subset sum is distinct."""

    ok: bool
    witness: Optional[DSSWitness] = None

    def __bool__(self) -> bool:
        return self.ok


def _validate(elements: Iterable[int]) -> tuple[int, ...]:
    els = tuple(int(e) for e in elements)
    if not els:
        raise ValueError("set must be non-empty")
    if any(e < 1 for e in els):
        raise ValueError("elements must be positive integers")
    if len(set(els)) != len(els):
        raise ValueError("elements must be distinct")
    return els


def is_dss(elements: Iterable[int]) -> DSSResult:
    """Check that all ``2**n`` subset sums are distinct.

    Subsets are enumerated by bitmask in increasing order; the first repeated
    sum wins and the two colliding subsets are made disjoint.
    """
    els = _validate(elements)
    if len(els) > DSS_LIMIT:
        raise SearchLimitError(f"{len(els)} elements exceed the DSS enumeration limit {DSS_LIMIT}")
    seen: dict[int, int] = {0: 0}
    sums = [0]
    for mask in range(1, 2 ** len(els)):
        low = (mask & -mask).bit_length() - 1
        total = sums[mask & (mask - 1)] + els[low]
        sums.append(total)
        if total in seen:
            other = seen[total]
            a, b = other & ~mask, mask & ~other
            pick = lambda bits: tuple(e for i, e in enumerate(els) if (bits >> i) & 1)
            return DSSResult(False, DSSWitness(pick(a), pick(b)))
        seen[total] = mask
    return DSSResult(True)


def construction1(elements: Iterable[int]) -> BinaryMatrix:
    """Binary-expansion matrix of a set, LSB in row 0.

    Uses ``max(S).bit_length()`` rows, which is one more than
    ``ceil(log2 max(S))`` when the maximum is a power of two.
    """
    els = _validate(elements)
    m = max(els).bit_length()
    return BinaryMatrix([[(e >> i) & 1 for e in els] for i in range(m)])


class SetImage(NamedTuple):
    elements: tuple[int, ...]
    duplicates: tuple[int, ...]

    @property
    def is_set(self) -> bool:
        return not self.duplicates


def matrix_to_set(Q: BinaryMatrix) -> SetImage:
    """Read each column as a binary number (row 0 = LSB), in column order."""
    weights = [1 << i for i in range(Q.rows)]
    values = tuple(int(sum(w * int(b) for w, b in zip(weights, col))) for col in Q.array.T)
    counts: dict[int, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    return SetImage(values, tuple(sorted(v for v, c in counts.items() if c > 1)))


def powers_of_two(n: int) -> tuple[int, ...]:
    return tuple(1 << i for i in range(n))
