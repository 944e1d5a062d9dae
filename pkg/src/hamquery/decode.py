"""Recover ``x`` from overlap responses ``omega = Q_s x``.

Write ``x^(j) = (x^(j-1), y^(j-1), z^(j-1))`` for the column split of level
``j``.  Removing the bottom block row from the top one (premultiplying by
``R_1 = [I  -C_j]``) gives::

    Q_{j-1} x^(j-1) = omega^(j-1) + u^(j-1)
    omega^(j-1)     = omega^(j)_top - C_j omega^(j)_bottom
    u^(j-1)         = 2**j z^(j-1) + R_1 u^(j),        u^(s) = 0

so ``u^(j)`` is a multiple of ``2**(j+1)``.  Decoding then runs upward from
``x^(0) = omega^(0) mod 2``::

    u^(j) = Q_j x^(j) - omega^(j)                 (checked divisible by 2**(j+1))
    z^(j) = (u^(j) / 2**(j+1)) mod 2
    y^(j) = (omega^(j+1)_bottom - C_{j+1}^T z^(j)) mod 2

The usual textbook statement of this rule writes ``R^(j) u^(j)`` with the
full two-block ``R``; only its top block ``R_1`` is dimensionally
consistent, and that is what is used here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bitmat import _as_int_array, matvec
from .construct import Construction
from .errors import DimensionError, InconsistentResponsesError
from .oracle import hamming_to_overlap


@dataclass
class DecodeState:
    """Intermediate quantities of one decoding run (indexed by level)."""

    omegas: list[np.ndarray]
    u: list[np.ndarray] = field(default_factory=list)
    fragments: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = field(default_factory=list)


def _columns(c: Construction, omega) -> tuple[np.ndarray, bool]:
    W = _as_int_array(omega)
    single = W.ndim == 1
    W = W[None, :] if single else W
    if W.ndim != 2 or W.shape[1] != c.m:
        raise DimensionError(f"expected responses of length {c.m}, got shape {np.shape(omega)}")
    return W.T, single


def _forward(c: Construction, Om: np.ndarray) -> list[np.ndarray]:
    out = [Om]
    for j in range(c.s, 0, -1):
        a = c.level_sizes[j - 1][0]
        out.append(out[-1][:a] - matvec(c.c(j), out[-1][a:]))
    out.reverse()
    return out


def forward_omegas(c: Construction, omega_s) -> list[np.ndarray]:
    """Return ``[omega^(0), ..., omega^(s)]`` (list index = level)."""
    Om, single = _columns(c, omega_s)
    out = _forward(c, Om)
    return [o[:, 0] for o in out] if single else out


def _decode_columns(c: Construction, Om: np.ndarray, verify: bool, state: DecodeState | None):
    Q_s = c.flatten()
    # genuine responses lie in [0, w(q_i)]
    weights = Q_s.row_weights()[:, None]
    bad = np.argwhere((Om < 0) | (Om > weights))
    if bad.size:
        i, t = bad[0]
        raise InconsistentResponsesError(
            f"response {int(Om[i, t])} to query {i} is outside 0..{int(weights[i, 0])}"
        )
    omegas = _forward(c, Om)
    if state is not None:
        state.omegas = omegas

    x = np.mod(omegas[0], 2)
    for j in range(c.s):
        mod = 2 ** (j + 1)
        u = matvec(c.flatten(j), x) - omegas[j]
        if np.any(np.mod(u, mod)):
            i = int(np.argwhere(np.mod(u, mod))[0][0])
            raise InconsistentResponsesError(
                f"level {j}: correction entry {i} is not divisible by {mod}"
            )
        z = np.mod(u // mod, 2)
        bottom = omegas[j + 1][c.level_sizes[j][0]:]
        y = np.mod(bottom - matvec(c.c(j + 1).T, z), 2)
        if state is not None:
            state.u.append(u)
            state.fragments.append((x, y, z))
        x = np.concatenate([x, y, z])

    if verify:
        resid = matvec(Q_s, x) - Om
        if np.any(resid):
            i = int(np.argwhere(resid)[0][0])
            raise InconsistentResponsesError(
                f"re-encoding the decoded vector disagrees with response {i}"
            )
        if state is not None:
            state.u.append(resid)
    return x


def decode(c: Construction, omega_s, verify: bool = True) -> np.ndarray:
    """Decode one response vector or a 2-d batch (one response vector per row).

    With ``verify`` the answer is re-encoded and compared before returning.
    Raises :class:`InconsistentResponsesError` when no binary vector fits.
    """
    Om, single = _columns(c, omega_s)
    x = _decode_columns(c, Om, verify, None)
    return x[:, 0] if single else x.T


def decode_with_trace(c: Construction, omega_s, verify: bool = True) -> tuple[np.ndarray, DecodeState]:
    Om, single = _columns(c, omega_s)
    if not single:
        raise DimensionError("decode_with_trace takes a single response vector")
    state = DecodeState(omegas=[])
    x = _decode_columns(c, Om, verify, state)
    state.omegas = [o[:, 0] for o in state.omegas]
    state.u = [u[:, 0] for u in state.u]
    state.fragments = [tuple(f[:, 0] for f in frag) for frag in state.fragments]
    return x[:, 0], state


def hamming_responses_to_overlap(c: Construction, d_responses, d_allones: int) -> np.ndarray:
    d = _as_int_array(d_responses)
    if d.shape != (c.m,):
        raise DimensionError(f"expected {c.m} Hamming responses, got shape {d.shape}")
    if not 0 <= d_allones <= c.n:
        raise InconsistentResponsesError(f"all-ones distance {d_allones} outside 0..{c.n}")
    wx = c.n - int(d_allones)
    weights = c.flatten().row_weights()
    return np.array(
        [hamming_to_overlap(int(di), int(wy), wx) for di, wy in zip(d, weights)], dtype=np.int64
    )


def decode_hamming(c: Construction, d_responses, d_allones: int, verify: bool = True) -> np.ndarray:
    """Decode Hamming distances to the rows of ``Q_s`` plus the all-ones distance."""
    return decode(c, hamming_responses_to_overlap(c, d_responses, d_allones), verify=verify)
