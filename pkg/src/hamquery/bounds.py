"""Query-ratio bounds and size estimates for the recursive construction.

Curves produced here, all as functions of the vector length ``n``:

* packing lower bound ``1 / log2(n + 1)``;
* the probabilistic achievability bound ``log2(9) / log2(n)``, whose
  vanishing correction term ``phi(n)`` is unspecified and is taken as 0;
* estimated ratios of ``Q_s(r)`` when the level-``j`` code block is sized
  by the Graham-Sloane codeword bound or by the Wilson block count;
* the exact sizes of the worked example constructions.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Optional, Sequence, TextIO

from .construct import q1_size

# (n, m) of Q_1(4), Q_2(9) and Q_3(9) built on S(2,4,25) and S(2,8,64) rows
EXAMPLE_SIZES = {16: 10, 151: 70, 285: 134}


def packing_lower(n: int) -> float:
    """Lower bound on the ratio of any UI matrix with ``n`` columns.

    ``2**n`` vectors need distinct response vectors among ``(n+1)**m``, so
    ``m / n >= 1 / log2(n + 1)``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    return 1.0 / math.log2(n + 1)


def ly_upper(n: int) -> float:
    """Leading term ``log2(9) / log2(n)`` of the probabilistic achievability bound."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return math.log2(9) / math.log2(n)


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = 2
    while p * p <= q:
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
        p += 1
    return True


@lru_cache(maxsize=None)
def next_prime_power(n: int) -> int:
    """Smallest prime power ``q >= n``."""
    q = max(n, 2)
    while not is_prime_power(q):
        q += 1
    return q


def gs_codewords(n: int, delta: int, w: int) -> int:
    """Graham-Sloane lower bound ``floor(C(n, w) / q**(delta-1))`` on A(n, 2*delta, w)."""
    if not n >= w >= 1 or delta < 1:
        raise ValueError(f"need n >= w >= 1 and delta >= 1, got n={n}, w={w}, delta={delta}")
    return comb(n, w) // next_prime_power(n) ** (delta - 1)


@lru_cache(maxsize=None)
def min_blocklength_gs(rows_needed: int, w: int, delta: int) -> int:
    """Smallest ``n`` with ``gs_codewords(n, delta, w) >= rows_needed``."""
    if rows_needed < 1:
        raise ValueError("rows_needed must be positive")
    n = w
    c = 1  # C(n, w)
    while c < rows_needed * next_prime_power(n) ** (delta - 1):
        n += 1
        c = c * n // (n - w)
    return n


def wilson_admissible(v: int, k: int, lam: int = 1) -> bool:
    return lam * (v - 1) % (k - 1) == 0 and lam * v * (v - 1) % (k * (k - 1)) == 0


def wilson_blocks(v: int, k: int) -> int:
    """Block count ``v(v-1) / (k(k-1))`` of a pairwise balanced design with lambda = 1."""
    if not wilson_admissible(v, k):
        raise ValueError(f"v={v}, k={k} fails the divisibility conditions for lambda=1")
    return v * (v - 1) // (k * (k - 1))


@lru_cache(maxsize=None)
def wilson_blocklength(rows_needed: int, k: int) -> int:
    """Smallest admissible ``v`` whose lambda=1 design has ``>= rows_needed`` blocks."""
    v = k
    while not (wilson_admissible(v, k) and wilson_blocks(v, k) >= rows_needed):
        v += 1
    return v


def level_sizes(r: int, s: int, sizing: str = "gs") -> list[tuple[int, int]]:
    """Estimated ``(m_j, n_j)`` for ``j = 1..s``.

    Level 1 is exact; the code block of level ``j >= 2`` needs ``m_{j-1}``
    rows of weight ``2**j`` and distance ``2(2**j - 1)`` and its length is
    taken from the chosen bound (``"gs"`` or ``"wilson"``).
    """
    m, n = q1_size(r)
    out = [(m, n)]
    for j in range(2, s + 1):
        w = 2**j
        if sizing == "gs":
            cols = min_blocklength_gs(m, w, w - 1)
        elif sizing == "wilson":
            cols = wilson_blocklength(m, w)
        else:
            raise ValueError(f"unknown sizing {sizing!r}")
        m, n = m + cols, n + m + cols
        out.append((m, n))
    return out


@dataclass
class BoundsRecord:
    n: int
    packing_lower: float
    ly_upper: Optional[float]
    gs_ratio_estimates: dict[int, Fraction] = field(default_factory=dict)
    wilson_ratio_estimate: Optional[Fraction] = None
    example_point: Optional[Fraction] = None

    def achieved(self) -> list[Fraction]:
        vals = list(self.gs_ratio_estimates.values())
        for v in (self.wilson_ratio_estimate, self.example_point):
            if v is not None:
                vals.append(v)
        return vals


def _record(n: int) -> BoundsRecord:
    return BoundsRecord(n, packing_lower(n), ly_upper(n) if n >= 2 else None)


def ratio_curve(s_max: int, r_range: Iterable[int], wilson_level: int = 3) -> list[BoundsRecord]:
    """One record per ``(r, s)`` point of every estimated curve.

    Graham-Sloane records fill ``gs_ratio_estimates[s]``; Wilson records
    (level ``wilson_level`` only) fill ``wilson_ratio_estimate``.
    """
    out = []
    for r in r_range:
        for s, (m, n) in enumerate(level_sizes(r, s_max, "gs"), start=1):
            rec = _record(n)
            rec.gs_ratio_estimates[s] = Fraction(m, n)
            out.append(rec)
        if s_max >= wilson_level:
            m, n = level_sizes(r, wilson_level, "wilson")[-1]
            rec = _record(n)
            rec.wilson_ratio_estimate = Fraction(m, n)
            out.append(rec)
    return out


def example_points() -> list[tuple[int, Fraction]]:
    return [(n, Fraction(m, n)) for n, m in sorted(EXAMPLE_SIZES.items())]


def r_range_upto(n_max: int) -> range:
    """All ``r >= 3`` whose level-1 matrix has at most ``n_max`` columns."""
    r = 3
    while q1_size(r + 1)[1] <= n_max:
        r += 1
    return range(3, r + 1) if q1_size(3)[1] <= n_max else range(0)


def bounds_table(n_max: int, s_max: int = 3) -> list[BoundsRecord]:
    """One merged record for every ``n`` in ``1..n_max``."""
    table = {n: _record(n) for n in range(1, n_max + 1)}
    for rec in ratio_curve(s_max, r_range_upto(n_max)):
        if rec.n > n_max:
            continue
        row = table[rec.n]
        row.gs_ratio_estimates.update(rec.gs_ratio_estimates)
        if rec.wilson_ratio_estimate is not None:
            row.wilson_ratio_estimate = rec.wilson_ratio_estimate
    for n, ratio in example_points():
        if n <= n_max:
            table[n].example_point = ratio
    return [table[n] for n in range(1, n_max + 1)]


def csv_header(s_max: int = 3) -> list[str]:
    return ["n", "packing", "ly", *[f"q{s}_gs" for s in range(1, s_max + 1)], "q3_wilson", "example"]


def _fmt(x) -> str:
    return "" if x is None else f"{float(x):.10g}"


def write_csv(records: Sequence[BoundsRecord], out: TextIO, s_max: int = 3) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(csv_header(s_max))
    for rec in records:
        w.writerow(
            [
                rec.n,
                _fmt(rec.packing_lower),
                _fmt(rec.ly_upper),
                *[_fmt(rec.gs_ratio_estimates.get(s)) for s in range(1, s_max + 1)],
                _fmt(rec.wilson_ratio_estimate),
                _fmt(rec.example_point),
            ]
        )


def to_csv(records: Sequence[BoundsRecord], s_max: int = 3) -> str:
    buf = io.StringIO()
    write_csv(records, buf, s_max)
    return buf.getvalue()
