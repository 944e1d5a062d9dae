"""Uniquely-identifying (UI) checks for binary query matrices.

A matrix ``M`` is UI when ``M z = 0`` has no nonzero solution with entries
in {-1, 0, 1}; equivalently no two disjoint column sets have equal sums.

Three independent routes are provided:

* :func:`is_ui_exact` -- depth-first assignment of ternary coefficients with
  a per-row reachability bound (the main exact checker).
* :func:`is_ui_subsets` -- all ``2**n`` column-subset sums must be distinct;
  a collision between two subsets, with their intersection removed, is a
  witness.  Used as a cross-check.
* :func:`is_ui_random` -- random sparse ternary vectors; it can only
  falsify.  A run that finds nothing proves nothing.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .bitmat import BinaryMatrix, column_subset_sum
from .construct import Construction
from .errors import SearchLimitError

log = logging.getLogger(__name__)

DEFAULT_EXACT_LIMIT = 24
SUBSETS_LIMIT = 16
NONEXISTENCE_LIMIT = 24


@dataclass(frozen=True)
class UIWitness:
    """Nonzero ternary ``z`` with ``M z = 0``."""

    z: tuple[int, ...]

    @property
    def plus(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.z) if v == 1)

    @property
    def minus(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.z) if v == -1)

    def is_valid_for(self, M: BinaryMatrix) -> bool:
        z = np.asarray(self.z, dtype=np.int64)
        return (
            z.size == M.cols
            and bool(np.isin(z, (-1, 0, 1)).all())
            and bool(z.any())
            and not (M.array @ z).any()
            and np.array_equal(column_subset_sum(M, self.plus), column_subset_sum(M, self.minus))
        )

    def describe(self) -> str:
        fmt = lambda s: "{" + ",".join(str(i) for i in s) + "}"
        return f"{fmt(self.plus)} vs {fmt(self.minus)}"


@dataclass(frozen=True)
class UIResult:
    """Verdict of a UI check; truthy when no witness was found.

    ``exhaustive`` is False for randomized runs, whose positive verdicts
    only mean that no witness turned up.
    """

    ui: bool
    witness: Optional[UIWitness] = None
    exhaustive: bool = True

    def __bool__(self) -> bool:
        return self.ui


def _checked(M: BinaryMatrix, z: Sequence[int], exhaustive: bool = True) -> UIResult:
    w = UIWitness(tuple(int(v) for v in z))
    if not w.is_valid_for(M):
        raise RuntimeError(f"checker produced an invalid witness {w.z}")
    return UIResult(False, w, exhaustive)


# -- exact depth-first search ------------------------------------------------


def _search_order(a: np.ndarray) -> list[int]:
    # heavy columns first; ties keep the original order
    weights = a.sum(axis=0)
    return sorted(range(a.shape[1]), key=lambda j: -int(weights[j]))


def _dfs(a: np.ndarray, order: list[int], modulus: int, prefix: tuple[int, ...]) -> Optional[list[int]]:
    """First nonzero ternary z (in search order) with every row sum of
    ``a z`` divisible by ``modulus`` (0 means exactly zero).

    Coefficients are tried in the order 0, +1, -1 and the first nonzero
    coefficient is fixed to +1, since ``-z`` is a witness whenever ``z`` is.
    """
    m = a.shape[0]
    n = len(order)
    supports = [tuple(int(i) for i in np.flatnonzero(a[:, j])) for j in order]
    rem = [0] * m
    for sup in supports:
        for i in sup:
            rem[i] += 1
    p = [0] * m
    z = [0] * n

    if modulus:
        def ok(i: int) -> bool:
            return (p[i] + rem[i]) // modulus * modulus >= p[i] - rem[i]
    else:
        def ok(i: int) -> bool:
            return -rem[i] <= p[i] <= rem[i]

    def place(t: int, v: int) -> bool:
        sup = supports[t]
        for i in sup:
            rem[i] -= 1
            p[i] += v
        z[t] = v
        return all(ok(i) for i in sup)

    def unplace(t: int, v: int) -> None:
        for i in supports[t]:
            rem[i] += 1
            p[i] -= v
        z[t] = 0

    def go(t: int, nonzero: bool) -> bool:
        if t == n:
            return nonzero
        for v in ((0, 1, -1) if nonzero else (0, 1)):
            if place(t, v) and go(t + 1, nonzero or v != 0):
                return True
            unplace(t, v)
        return False

    nonzero = False
    for t, v in enumerate(prefix):
        if not place(t, v):
            return None
        nonzero = nonzero or v != 0
    if not go(len(prefix), nonzero):
        return None
    out = [0] * n
    for t, j in enumerate(order):
        out[j] = z[t]
    return out


def _prefixes(depth: int) -> list[tuple[int, ...]]:
    out = []
    for pre in itertools.product((0, 1, -1), repeat=depth):
        nz = [v for v in pre if v]
        if not nz or nz[0] == 1:
            out.append(pre)
    return out


def _split_search(a: np.ndarray, modulus: int, threads: int, split_depth: int) -> Optional[list[int]]:
    order = _search_order(a)
    if threads <= 1 or split_depth <= 0 or a.shape[1] <= split_depth:
        return _dfs(a, order, modulus, ())
    prefixes = _prefixes(split_depth)
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(_dfs, a, order, modulus, pre) for pre in prefixes]
        # subtree order decides which witness wins, not completion order
        for fut in futures:
            z = fut.result()
            if z is not None:
                for other in futures:
                    other.cancel()
                return z
    return None


def is_ui_exact(
    M: BinaryMatrix, limit: int = DEFAULT_EXACT_LIMIT, threads: int = 1, split_depth: int = 3
) -> UIResult:
    """Exhaustive ternary null-space search with pruning.

    A branch is cut as soon as some row's partial sum exceeds (in absolute
    value) the number of unassigned columns that still hit that row.
    Refuses matrices with more than ``limit`` columns.
    """
    if M.cols > limit:
        raise SearchLimitError(f"{M.cols} columns exceed the exact-search limit {limit}")
    if limit > DEFAULT_EXACT_LIMIT and M.cols > DEFAULT_EXACT_LIMIT:
        log.warning("exact UI search on %d columns may take very long", M.cols)
    z = _split_search(M.array, 0, threads, split_depth)
    return UIResult(True) if z is None else _checked(M, z)


# -- subset-sum cross-check --------------------------------------------------


def is_ui_subsets(M: BinaryMatrix) -> UIResult:
    """UI iff the ``2**n`` column-subset sums are pairwise distinct."""
    n = M.cols
    if n > SUBSETS_LIMIT:
        raise SearchLimitError(f"{n} columns exceed the subset-enumeration limit {SUBSETS_LIMIT}")
    a = M.array
    # row `mask` of `sums` is the column sum of the subset encoded by `mask`
    sums = np.zeros((1, M.rows), dtype=np.int64)
    for j in range(n):
        sums = np.concatenate([sums, sums + a[:, j]])
    _, first, inverse = np.unique(sums, axis=0, return_index=True, return_inverse=True)
    earlier = first[inverse.ravel()]
    clash = np.flatnonzero(earlier < np.arange(sums.shape[0]))
    if clash.size == 0:
        return UIResult(True)
    t = int(clash[0])
    s = int(earlier[t])
    z = [((s >> j) & 1) - ((t >> j) & 1) for j in range(n)]
    return _checked(M, z)


# -- randomized falsification ------------------------------------------------


def is_ui_random(M: BinaryMatrix, trials: int, seed: int, batch: int = 4096) -> UIResult:
    """Look for a ternary null vector by sampling; never proves UI.

    Zero and repeated columns are detected directly first.  Then half of the
    samples are sparse ternary vectors (support 2..min(n, 12), uniform
    signs) and half are equal-size disjoint column-set pairs.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    a = M.array
    n = M.cols
    zero = np.flatnonzero(~a.any(axis=0))
    if zero.size:
        z = [0] * n
        z[int(zero[0])] = 1
        return _checked(M, z, exhaustive=False)
    _, first, inverse = np.unique(a.T, axis=0, return_index=True, return_inverse=True)
    dup = np.flatnonzero(first[inverse.ravel()] < np.arange(n))
    if dup.size:
        z = [0] * n
        z[int(first[inverse.ravel()[dup[0]]])] = 1
        z[int(dup[0])] = -1
        return _checked(M, z, exhaustive=False)
    if n < 2:
        return UIResult(True, exhaustive=False)

    rng = np.random.default_rng(seed)
    kmax = min(n, 12)
    done = 0
    while done < trials:
        b = min(batch, trials - done)
        perm = rng.random((b, n)).argsort(axis=1)[:, :kmax]
        Z = np.zeros((b, n), dtype=np.int64)
        rows = np.arange(b)[:, None]
        half = b // 2
        # sparse ternary vectors
        k = rng.integers(2, kmax + 1, size=half)
        signs = rng.choice(np.array([-1, 1]), size=(half, kmax))
        signs[np.arange(kmax)[None, :] >= k[:, None]] = 0
        Z[rows[:half], perm[:half]] = signs
        # disjoint equal-size pairs
        rest = b - half
        size = rng.integers(1, max(kmax // 2, 1) + 1, size=rest)
        pos = np.arange(kmax)[None, :]
        pair_signs = np.where(pos < size[:, None], 1, np.where(pos < 2 * size[:, None], -1, 0))
        Z[rows[half:], perm[half:]] = pair_signs
        hits = np.flatnonzero(~(Z @ a.T).any(axis=1) & Z.any(axis=1))
        if hits.size:
            return _checked(M, Z[int(hits[0])].tolist(), exhaustive=False)
        done += b
    return UIResult(True, exhaustive=False)


# -- divisibility check ------------------------------------------------------


@dataclass(frozen=True)
class PowerFreeResult:
    """``ok`` means no nonzero ternary x puts every entry of ``M x`` in ``modulus * Z``."""

    ok: bool
    modulus: int
    counterexample: Optional[tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.ok


def check_power_free_matrix(
    M: BinaryMatrix, modulus: int, limit: int = DEFAULT_EXACT_LIMIT
) -> PowerFreeResult:
    if modulus < 1:
        raise ValueError("modulus must be positive")
    if M.cols > limit:
        raise SearchLimitError(f"{M.cols} columns exceed the exact-search limit {limit}")
    z = _dfs(M.array, _search_order(M.array), modulus, ())
    if z is None:
        return PowerFreeResult(True, modulus)
    if np.any((M.array @ np.array(z)) % modulus) or not any(z):
        raise RuntimeError(f"invalid counterexample {z}")
    return PowerFreeResult(False, modulus, tuple(z))


def check_power_free(c: Construction, level: int, limit: int = DEFAULT_EXACT_LIMIT) -> PowerFreeResult:
    """Exhaustively confirm ``Q_level x`` leaves ``(2**(level+1) Z)^m`` for
    every nonzero ternary ``x``."""
    return check_power_free_matrix(c.flatten(level), 2 ** (level + 1), limit)


# -- small-shape enumeration -------------------------------------------------


def _distinct_subset_sums(keys: Sequence[int]) -> bool:
    sums = [0]
    for k in keys:
        sums += [s + k for s in sums]
    return len(set(sums)) == len(sums)


def exhaustive_nonexistence(m: int, n: int, top_all_ones: bool = True) -> Optional[BinaryMatrix]:
    """First UI ``m x n`` matrix in enumeration order, or None if there is none.

    With ``top_all_ones`` the first row is fixed to all ones (the Hamming
    oracle setting) and only the remaining ``(m-1) n`` bits are enumerated.
    """
    free_rows = m - 1 if top_all_ones else m
    bits = free_rows * n
    if bits > NONEXISTENCE_LIMIT:
        raise SearchLimitError(f"{bits} free bits exceed the enumeration limit {NONEXISTENCE_LIMIT}")
    base = n + 1
    top = 1 if top_all_ones else 0
    shift = 1 if top_all_ones else 0
    for code in range(2**bits):
        # column j of the free part is bits j, j+n, j+2n, ... of `code`
        keys = []
        for j in range(n):
            key = top
            for i in range(free_rows):
                if (code >> (i * n + j)) & 1:
                    key += base ** (i + shift)
            keys.append(key)
        if _distinct_subset_sums(keys):
            free = [[(code >> (i * n + j)) & 1 for j in range(n)] for i in range(free_rows)]
            rows = ([[1] * n] if top_all_ones else []) + free
            return BinaryMatrix(rows)
    return None
