from fractions import Fraction

import numpy as np
import pytest

from hamquery.bitmat import BinaryMatrix, gram
from hamquery.codes import greedy_code, greedy_packing
from hamquery.construct import (
    Construction,
    build_q1,
    extend,
    flatten,
    load_construction,
    query_ratio,
    save_construction,
)
from hamquery.errors import FormatError, ValidationError

PRINTED_C1 = ["1100", "1010", "1001", "0110", "0101", "0011"]
PRINTED_E1 = ["011110", "101101", "110011", "110011", "101101", "011110"]

# worked by hand: [I3 C1 E1 ; 0 I3 C1^T] with C1 = 110/101/011, E1 = J - I
Q1_3 = [
    "100110011",
    "010101101",
    "001011110",
    "000100110",
    "000010101",
    "000001011",
]


def test_q1_4_blocks_bit_exact(q1_4):
    assert q1_4.c(1).row_strings() == PRINTED_C1
    assert q1_4.e(1).row_strings() == PRINTED_E1
    Q = flatten(q1_4, 1)
    assert Q.shape == (10, 16)
    assert BinaryMatrix(Q.array[:6, 6:10]).row_strings() == PRINTED_C1
    assert BinaryMatrix(Q.array[:6, 10:]).row_strings() == PRINTED_E1
    assert query_ratio(q1_4) == Fraction(5, 8)


def test_q1_3_by_hand(q1_3):
    assert q1_3.flatten().row_strings() == Q1_3
    assert q1_3.query_ratio() == Fraction(2, 3)


def test_q1_9_size():
    assert build_q1(9).flatten().shape == (45, 81)


def test_r_too_small():
    with pytest.raises(ValueError):
        build_q1(2)


def test_q2_9_size(q2_9):
    assert q2_9.flatten().shape == (70, 151)
    assert q2_9.query_ratio() == Fraction(70, 151)


def test_q3_9_size(q3_9):
    assert q3_9.level_sizes == [(36, 36), (45, 81), (70, 151), (134, 285)]
    assert q3_9.query_ratio() > Fraction(70, 151)


def test_level0_is_identity(q1_4):
    assert flatten(q1_4, 0) == BinaryMatrix.identity(6)
    with pytest.raises(IndexError):
        flatten(q1_4, 2)


def test_extend_rejects_bad_codes(q1_3):
    with pytest.raises(ValidationError):
        extend(q1_3, greedy_code(5, 4))  # wrong row count
    # first two rows share points 0 and 1
    rows = [[1, 1, 1, 1, 0, 0, 0, 0], [1, 1, 0, 0, 1, 1, 0, 0]] + [
        [0, 0, 1, 0, 1, 0, 1, 1],
        [0, 0, 0, 1, 0, 1, 1, 1],
        [1, 0, 1, 0, 0, 1, 0, 1],
        [0, 1, 0, 1, 1, 0, 1, 0],
    ]
    with pytest.raises(ValidationError):
        extend(q1_3, BinaryMatrix(rows))


def test_extend_rejects_wrong_weight(q1_3):
    with pytest.raises(ValidationError):
        extend(q1_3, greedy_packing(20, 3, 6))


def built_constructions(q1_3, q1_4, q2_9, q3_9):
    return [q1_3, q1_4, q2_9, q3_9, extend(q1_3, greedy_code(6, 4)), build_q1(12)]


@pytest.mark.parametrize("which", range(6))
def test_structure_invariants(which, q1_3, q1_4, q2_9, q3_9):
    c = built_constructions(q1_3, q1_4, q2_9, q3_9)[which]
    for j in range(1, c.s + 1):
        C, E = c.c(j).array, c.e(j).array
        assert (gram(C) == E + 2**j * np.eye(C.shape[0], dtype=int)).all()
        assert (E == E.T).all() and (np.diag(E) == 0).all()
        mj, nj = c.level_sizes[j]
        mp, np_ = c.level_sizes[j - 1]
        assert mj == mp + C.shape[1] and nj == np_ + mj
        Q = c.flatten(j).array
        assert Q.shape == (mj, nj)
        assert (Q[:mp, :np_] == c.flatten(j - 1).array).all()
        assert (Q[mp:, :np_] == 0).all()


def test_descriptor_text(q1_3):
    c = extend(q1_3, greedy_code(6, 4))
    text = c.to_text()
    assert text.startswith("r=3 s=2\n[C2]\n6 ")
    assert Construction.from_text(text) == c


def test_save_load_roundtrip(tmp_path, q1_4, q2_9):
    for c in (q1_4, q2_9):
        p = tmp_path / "c.desc"
        save_construction(c, p)
        back = load_construction(p)
        assert back == c
        assert back.flatten().shape == c.flatten().shape
    assert (tmp_path / "c.desc").read_text().count("[C2]") == 1


def test_load_rejects_tampered(tmp_path, q2_9):
    lines = q2_9.to_text().split("\n")
    # make the first two blocks share a second point
    row0, row1 = lines[3], lines[4]
    ones0 = [i for i, ch in enumerate(row0) if ch == "1"]
    shared = [i for i in ones0 if row1[i] == "1"]
    extra = next(i for i in ones0 if i not in shared)
    drop = next(i for i, ch in enumerate(row1) if ch == "1" and i not in ones0)
    new1 = list(row1)
    new1[extra], new1[drop] = "1", "0"
    lines[4] = "".join(new1)
    p = tmp_path / "bad.desc"
    p.write_text("\n".join(lines))
    with pytest.raises(ValidationError):
        load_construction(p)


@pytest.mark.parametrize(
    "text",
    ["r=4\n", "r=4 s=2\n", "r=4 s=1\n[C2]\n1 1\n1\n", "r=x s=1\n", "r=4 s=1"],
)
def test_load_rejects_malformed(text):
    with pytest.raises(FormatError):
        Construction.from_text(text)


def test_q1_50_ratio():
    assert build_q1(50).query_ratio() == Fraction(1275, 2500)
