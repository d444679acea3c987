import random

import pytest
from hypothesis import given, settings, strategies as st

from subrep import LceIndex, PositionError, Word, build_index


def scan_forward(s, i, j):
    k = 0
    while i + k <= len(s) and j + k <= len(s) and s[i + k - 1] == s[j + k - 1]:
        k += 1
    return k


def scan_backward(s, i, j):
    k = 0
    while i - k >= 1 and j - k >= 1 and s[i - k - 1] == s[j - k - 1]:
        k += 1
    return k


def test_w1_forward(w1):
    assert build_index(w1).lce_forward(1, 10) == 8


def test_w1_backward(w1):
    assert build_index(w1).lce_backward(8, 17) == 8


def test_abaab():
    idx = build_index(Word.from_text("abaab"))
    assert idx.lce_forward(1, 4) == 2
    assert idx.lce_backward(2, 5) == 2
    assert idx.lce_backward(3, 5) == 0


def test_w5_mismatch(w5):
    assert build_index(w5).lce_forward(1, 10) == 0


def test_self_comparison(wu):
    idx = build_index(wu)
    assert [idx.lce_forward(i, i) for i in range(1, 5)] == [4, 3, 2, 1]
    assert [idx.lce_backward(i, i) for i in range(1, 5)] == [1, 2, 3, 4]


def test_empty_word_answers_nothing():
    idx = build_index(Word())
    with pytest.raises(PositionError):
        idx.lce_forward(1, 1)


@pytest.mark.parametrize("i,j", [(0, 1), (1, 5), (-1, 2)])
def test_out_of_range(wu, i, j):
    with pytest.raises(PositionError):
        LceIndex(wu).lce_forward(i, j)
    with pytest.raises(PositionError):
        LceIndex(wu).lce_backward(i, j)


def test_agrees_with_scan_on_random_words():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(1, 256)
        s = [rng.randrange(rng.randint(1, 4)) for _ in range(n)]
        idx = LceIndex(Word(s))
        for _ in range(40):
            i, j = rng.randint(1, n), rng.randint(1, n)
            assert idx.lce_forward(i, j) == scan_forward(s, i, j)
            assert idx.lce_backward(i, j) == scan_backward(s, i, j)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=60), st.data())
def test_symmetry_and_equality(s, data):
    idx = LceIndex(Word(s))
    n = len(s)
    i = data.draw(st.integers(1, n))
    j = data.draw(st.integers(1, n))
    k = idx.lce_forward(i, j)
    assert k == idx.lce_forward(j, i)
    assert s[i - 1 : i - 1 + k] == s[j - 1 : j - 1 + k]


def test_suffix_ranks_sort_suffixes():
    s = "mississippi"
    idx = LceIndex(Word.from_text(s))
    order = sorted(range(1, len(s) + 1), key=idx.suffix_rank)
    assert [s[i - 1 :] for i in order] == sorted(s[i:] for i in range(len(s)))
