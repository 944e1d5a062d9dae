import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamquery.bitmat import hamming_distance, matvec
from hamquery.codes import greedy_code
from hamquery.construct import build_q1, extend
from hamquery.decode import (
    decode,
    decode_hamming,
    decode_with_trace,
    forward_omegas,
    hamming_responses_to_overlap,
)
from hamquery.errors import DimensionError, InconsistentResponsesError
from hamquery.simulate import exhaustive_roundtrip

Q2_3 = extend(build_q1(3), greedy_code(6, 4))
Q3_3 = extend(Q2_3, greedy_code(Q2_3.m, 8))


def encode(c, x):
    return matvec(c.flatten(), x)


def test_first_unit_vector_q1_3(q1_3):
    x = np.zeros(q1_3.n, dtype=np.int64)
    x[0] = 1
    omega = encode(q1_3, x)
    assert omega.tolist() == [1, 0, 0, 0, 0, 0]
    omegas = forward_omegas(q1_3, omega)
    assert omegas[0].tolist() == [1, 0, 0]
    assert omegas[1].tolist() == omega.tolist()
    assert decode(q1_3, omega).tolist() == x.tolist()


@pytest.mark.parametrize("c", [build_q1(3), build_q1(5), Q2_3, Q3_3], ids=["q1_3", "q1_5", "q2_3", "q3_3"])
def test_constant_vectors(c):
    for x in (np.zeros(c.n, dtype=np.int64), np.ones(c.n, dtype=np.int64)):
        assert decode(c, encode(c, x)).tolist() == x.tolist()


def test_q1_3_exhaustive(q1_3):
    assert exhaustive_roundtrip(q1_3) == 0


def test_q1_4_exhaustive(q1_4):
    assert exhaustive_roundtrip(q1_4) == 0


def test_exhaustive_refuses_large():
    with pytest.raises(ValueError):
        exhaustive_roundtrip(Q2_3)


def test_batch_matches_single(q2_9):
    rng = np.random.default_rng(5)
    X = rng.integers(0, 2, size=(20, q2_9.n))
    W = X @ q2_9.flatten().array.T
    assert (decode(q2_9, W) == X).all()
    assert decode(q2_9, W[3]).tolist() == X[3].tolist()


def test_wrong_length(q1_3):
    with pytest.raises(DimensionError):
        decode(q1_3, [0] * 5)


def test_out_of_range_response(q1_3):
    with pytest.raises(InconsistentResponsesError):
        decode(q1_3, [-1, 0, 0, 0, 0, 0])
    with pytest.raises(InconsistentResponsesError):
        decode(q1_3, [5, 0, 0, 0, 0, 0])


@settings(max_examples=300)
@given(st.data())
def test_perturbed_responses_never_decode_to_truth(data):
    c = data.draw(st.sampled_from([build_q1(4), Q2_3]))
    x = np.array(data.draw(st.lists(st.integers(0, 1), min_size=c.n, max_size=c.n)))
    omega = encode(c, x)
    i = data.draw(st.integers(0, c.m - 1))
    omega[i] += data.draw(st.sampled_from([-1, 1]))
    try:
        got = decode(c, omega)
    except InconsistentResponsesError:
        return
    # any answer that survives verification must explain the perturbed responses
    assert not np.array_equal(got, x)
    assert encode(c, got).tolist() == omega.tolist()


@settings(max_examples=200)
@given(st.data())
def test_trace_invariants(data):
    c = data.draw(st.sampled_from([build_q1(3), Q2_3, Q3_3]))
    x = np.array(data.draw(st.lists(st.integers(0, 1), min_size=c.n, max_size=c.n)))
    got, state = decode_with_trace(c, encode(c, x))
    assert got.tolist() == x.tolist()
    for j in range(c.s):
        assert (state.u[j] % 2 ** (j + 1) == 0).all()
        n_j = c.level_sizes[j][1]
        # omega^(j) is Q_j applied to the first n_j bits, up to the correction u
        assert (matvec(c.flatten(j), x[:n_j]) - state.omegas[j] == state.u[j]).all()
    assert not state.u[-1].any()  # re-encoding residual


def test_decode_hamming(q2_9):
    rng = np.random.default_rng(11)
    for _ in range(20):
        x = rng.integers(0, 2, size=q2_9.n)
        Q = q2_9.flatten()
        d = [hamming_distance(Q.row(i), x) for i in range(Q.rows)]
        d_all = hamming_distance(np.ones(q2_9.n, dtype=np.int64), x)
        assert (hamming_responses_to_overlap(q2_9, d, d_all) == encode(q2_9, x)).all()
        assert decode_hamming(q2_9, d, d_all).tolist() == x.tolist()


def test_decode_hamming_rejects_parity(q1_3):
    d = [int(w) for w in q1_3.flatten().row_weights()]
    d[0] += 1
    with pytest.raises(InconsistentResponsesError):
        decode_hamming(q1_3, d, q1_3.n)
    with pytest.raises(InconsistentResponsesError):
        decode_hamming(q1_3, d, q1_3.n + 1)
