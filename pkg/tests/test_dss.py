import pytest
from hypothesis import given
from hypothesis import strategies as st

from hamquery.bitmat import BinaryMatrix
from hamquery.dss import DSS_LIMIT, construction1, is_dss, matrix_to_set, powers_of_two
from hamquery.errors import SearchLimitError
from hamquery.verify import is_ui_exact


def test_set_to_example2(example2):
    assert is_dss([3, 5, 6, 7])
    assert construction1([3, 5, 6, 7]) == example2


def test_example1_ui_but_not_dss(example1):
    image = matrix_to_set(example1)
    assert image.elements == (1, 3, 5, 9, 15) and image.is_set
    res = is_dss(image.elements)
    assert not res
    assert res.witness.left == (1, 3, 5) and res.witness.right == (9,)
    assert res.witness.describe() == "1+3+5 = 9"
    assert is_ui_exact(example1)


def test_power_of_two_rows():
    # bit_length: 8 needs four rows, one more than ceil(log2 8)
    assert construction1([1, 2, 8]).rows == 4
    assert construction1(powers_of_two(5)) == BinaryMatrix.identity(5)


def test_duplicates_reported():
    image = matrix_to_set(BinaryMatrix([[1, 1, 0], [0, 0, 1]]))
    assert image.elements == (1, 1, 2) and image.duplicates == (1,) and not image.is_set


@pytest.mark.parametrize("bad", [[], [0, 1], [-3], [2, 2]])
def test_invalid_sets(bad):
    with pytest.raises(ValueError):
        is_dss(bad)


def test_limit():
    with pytest.raises(SearchLimitError):
        is_dss(powers_of_two(DSS_LIMIT + 1))


@given(st.sets(st.integers(1, 200), min_size=1, max_size=8))
def test_dss_sets_give_ui_matrices(elements):
    els = sorted(elements)
    res = is_dss(els)
    sums = {}
    brute = True
    for mask in range(2 ** len(els)):
        t = sum(e for i, e in enumerate(els) if mask >> i & 1)
        brute &= t not in sums
        sums[t] = mask
    assert bool(res) == brute
    if res:
        assert is_ui_exact(construction1(els))
    else:
        w = res.witness
        assert sum(w.left) == sum(w.right) and not set(w.left) & set(w.right)
    assert matrix_to_set(construction1(els)).elements == tuple(els)
