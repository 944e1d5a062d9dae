"""Round-trip simulation: hidden vector -> oracle -> decoder.

Hidden vectors for ``trials`` runs are drawn up front from
``numpy.random.default_rng(seed)`` (PCG64), one ``integers(0, 2, n)`` call
per trial, so results do not depend on how the work is split across
threads.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .construct import Construction
from .decode import decode, decode_hamming
from .errors import InconsistentResponsesError
from .oracle import OracleSession, random_hidden


@dataclass
class RoundtripReport:
    trials: int
    failures: int
    queries_per_trial: int
    mode: str
    seed: int | None
    wall_time: float

    def lines(self) -> list[str]:
        return [
            f"mode={self.mode} seed={self.seed}",
            f"trials={self.trials} failures={self.failures}",
            f"queries_per_trial={self.queries_per_trial}",
            f"wall_time={self.wall_time:.3f}s",
        ]


def _one(c: Construction, hidden: np.ndarray, mode: str) -> tuple[bool, int]:
    session = OracleSession(hidden)
    try:
        if mode == "overlap":
            got = decode(c, session.run_query_matrix(c.flatten(), "overlap"))
        else:
            d_all = session.query_hamming(np.ones(c.n, dtype=np.int64))
            got = decode_hamming(c, session.hamming_responses(c.flatten()), d_all)
    except InconsistentResponsesError:
        return False, session.total_queries
    return bool(np.array_equal(got, hidden)), session.total_queries


def run_trials(c: Construction, hiddens: np.ndarray, mode: str = "overlap", threads: int = 1) -> tuple[int, int]:
    """Return ``(failures, queries_per_trial)`` over the rows of ``hiddens``."""
    if mode not in ("overlap", "hamming"):
        raise ValueError(f"unknown mode {mode!r}")
    if len(hiddens) == 0:
        return 0, 0
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda h: _one(c, h, mode), hiddens))
    else:
        results = [_one(c, h, mode) for h in hiddens]
    counts = {q for _, q in results}
    if len(counts) != 1:
        raise RuntimeError(f"query counts differ between trials: {sorted(counts)}")
    return sum(not ok for ok, _ in results), counts.pop()


def roundtrip(c: Construction, trials: int, seed: int, mode: str = "overlap", threads: int = 1) -> RoundtripReport:
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    hiddens = np.array([random_hidden(c.n, rng) for _ in range(trials)]).reshape(trials, c.n)
    failures, per = run_trials(c, hiddens, mode, threads)
    return RoundtripReport(trials, failures, per, mode, seed, time.perf_counter() - start)


def exhaustive_roundtrip(c: Construction) -> int:
    """Decode every binary vector of length ``n`` in one batch; return the failure count."""
    if c.n > 22:
        raise ValueError(f"2**{c.n} vectors is too many for an exhaustive run")
    X = ((np.arange(2**c.n)[:, None] >> np.arange(c.n)[None, :]) & 1).astype(np.int64)
    got = decode(c, X @ c.flatten().array.T)
    return int(np.count_nonzero((got != X).any(axis=1)))
