import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hamquery.bitmat import BinaryMatrix, gram
from hamquery.codes import (
    BlockDesign,
    blocks_of,
    bundled_design,
    greedy_code,
    greedy_packing,
    incidence,
    load_blocks,
    parse_blocks,
    validate_cw,
    weight2_rows,
)
from hamquery.errors import FormatError, ValidationError


def test_weight2_rows_r4_matches_printed_order():
    assert weight2_rows(4).matrix.row_strings() == ["1100", "1010", "1001", "0110", "0101", "0011"]


def test_weight2_rows_small():
    assert weight2_rows(2).matrix.row_strings() == ["11"]
    assert weight2_rows(3).matrix.row_strings() == ["110", "101", "011"]
    with pytest.raises(ValueError):
        weight2_rows(1)


@pytest.mark.parametrize("r", range(2, 12))
def test_weight2_rows_count_and_gram(r):
    code = weight2_rows(r)
    assert code.rows == r * (r - 1) // 2
    assert (gram(code.matrix).diagonal() == 2).all()
    assert code.weight == 2
    if r > 2:
        assert code.min_distance == 2


def test_load_blocks(tmp_path):
    p = tmp_path / "d.txt"
    p.write_text("v=4\n0 1\n2 3\n")
    d = load_blocks(p)
    assert d.v == 4 and d.blocks == ((0, 1), (2, 3))
    p.write_text("# one based\nv=4\n1 2\n3 4\n")
    assert load_blocks(p, one_based=True) == d


def test_load_blocks_infers_v():
    assert parse_blocks("0 1\n2 5\n").v == 6


@pytest.mark.parametrize(
    "text,err",
    [
        ("0 1\n2 3 4\n", ValidationError),  # ragged
        ("v=3\n0 1\n2 3\n", ValidationError),  # index >= v
        ("0 1\n1 0\n", ValidationError),  # duplicate block
        ("# nothing\n", FormatError),
        ("0 x\n", FormatError),
    ],
)
def test_load_blocks_errors(text, err):
    with pytest.raises(err):
        parse_blocks(text)


def test_incidence_small():
    code = incidence(BlockDesign(4, ((0, 1), (2, 3))))
    assert code.matrix.row_strings() == ["1100", "0011"]
    assert code.weight == 2


def test_incidence_roundtrip():
    d = bundled_design("s2_4_25")
    assert blocks_of(incidence(d)) == d


def pairs_covered_once(design):
    seen = set()
    for b in design.blocks:
        for pr in itertools.combinations(sorted(b), 2):
            assert pr not in seen
            seen.add(pr)
    return len(seen) == design.v * (design.v - 1) // 2


def test_bundled_s2_4_25_is_steiner():
    d = bundled_design("s2_4_25")
    assert (d.v, d.k, d.b) == (25, 4, 50)
    assert pairs_covered_once(d)
    code = incidence(d)
    assert code.matrix.shape == (50, 25) and code.weight == 4
    assert validate_cw(code.first_rows(45), 4, 6)


def test_bundled_s2_8_64_is_steiner():
    d = bundled_design("s2_8_64")
    assert (d.v, d.k, d.b) == (64, 8, 72)
    assert pairs_covered_once(d)
    assert validate_cw(incidence(d).first_rows(70), 8, 14)


def test_greedy_packing_examples():
    assert greedy_packing(4, 2, 6).rows == 6
    assert greedy_packing(3, 2, 5).rows == 3


def test_greedy_fano_by_brute_force():
    code = greedy_packing(7, 3, 7)
    rows = [set(j for j, v in enumerate(r) if v) for r in code.matrix.array]
    assert len(rows) == 7
    assert all(len(a & b) <= 1 for a, b in itertools.combinations(rows, 2))


def brute_lex_greedy(v, w, target):
    kept = []
    for cand in itertools.combinations(range(v), w):
        if all(len(set(cand) & set(k)) <= 1 for k in kept):
            kept.append(cand)
            if len(kept) == target:
                break
    return kept


@pytest.mark.parametrize("v,w", [(7, 3), (9, 3), (10, 4), (13, 4), (12, 5)])
def test_greedy_matches_lex_enumeration(v, w):
    expected = brute_lex_greedy(v, w, 10**6)
    assert blocks_of(greedy_packing(v, w, 10**6)).blocks == tuple(expected)


@given(st.integers(2, 6).flatmap(lambda w: st.tuples(st.just(w), st.integers(w, 20), st.integers(1, 40))))
def test_greedy_always_valid(args):
    w, v, target = args
    code = greedy_packing(v, w, target)
    assert code.rows <= target
    assert validate_cw(code, w, 2 * (w - 1))


def test_greedy_code_reaches_row_count():
    code = greedy_code(45, 4)
    assert code.rows == 45 and validate_cw(code, 4, 6)


def test_validate_cw_reports():
    assert validate_cw(weight2_rows(4), 2, 2)
    rep = validate_cw(BinaryMatrix.from_rows(["1100", "1100"]), 2, 2)
    assert not rep and rep.pair == (0, 1)
    rep = validate_cw(BinaryMatrix.from_rows(["1100", "1110"]), 2, 2)
    assert not rep and rep.row == 1
