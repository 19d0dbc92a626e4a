from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from nchs import combinatorics as C


def test_words_lexicographic():
    assert C.enumerate_words(2, 2) == [(1, 1), (1, 2), (2, 1), (2, 2)]
    assert C.enumerate_words(3, 0) == [()]
    assert len(C.enumerate_words(3, 3)) == 27


def test_monomial_order():
    assert C.enumerate_monomials(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert len(C.enumerate_monomials(3, 4)) == comb(6, 4)


@pytest.mark.parametrize("n,d", [(1, 3), (2, 4), (3, 3), (4, 2)])
def test_fibers_partition_words(n, d):
    counts = {}
    for w in C.enumerate_words(n, d):
        m = C.abelianize(w, n)
        counts[m] = counts.get(m, 0) + 1
    assert set(counts) == set(C.enumerate_monomials(n, d))
    assert all(C.fiber_size(m) == k for m, k in counts.items())


def test_fiber_size_multinomial():
    assert C.fiber_size((2, 1)) == 3
    assert C.fiber_size((2, 2)) == 6
    assert C.fiber_size((1, 1, 1)) == factorial(3)
    assert C.fiber_size((0, 0)) == 1


@given(st.integers(1, 4), st.integers(0, 5), st.data())
def test_index_roundtrip(n, d, data):
    i = data.draw(st.integers(0, n**d - 1))
    w = C.index_word(i, n, d)
    assert len(w) == d
    assert C.word_index(w, n) == i


def test_index_word_out_of_range():
    with pytest.raises(IndexError):
        C.index_word(4, 2, 2)


def test_monomial_letters_nondecreasing():
    assert C.monomial_letters((2, 0, 1)) == (1, 1, 3)
    assert C.abelianize((3, 1, 1), 3) == (2, 0, 1)


@given(st.integers(-12, 12), st.integers(0, 8))
def test_gen_binomial_matches_falling_factorial(r, k):
    assert C.gen_binomial(r, k) * factorial(k) == C.falling_factorial(r, k)
    if r >= 0:
        assert C.gen_binomial(r, k) == comb(r, k)


def test_gen_binomial_negative_values():
    assert C.gen_binomial(-1, 3) == -1
    assert C.gen_binomial(-2, 2) == 3
    with pytest.raises(ValueError):
        C.gen_binomial(5, -1)


def test_rendering():
    assert C.word_str(()) == "1"
    assert C.word_str((1, 1, 2)) == "x1^2 x2"
    assert C.word_str((2, 1, 2)) == "x2 x1 x2"
    assert C.monomial_str((2, 1)) == "x1^2 x2"


def test_reverse():
    assert C.reverse((1, 2, 2)) == (2, 2, 1)


def test_dimension_cap(monkeypatch):
    C.set_max_dim(10)
    try:
        with pytest.raises(C.DimensionCapError):
            C.enumerate_words(2, 4)
        assert len(C.enumerate_words(3, 2)) == 9
    finally:
        C.set_max_dim(None)
    monkeypatch.setenv("NCHS_MAX_DIM", "3")
    with pytest.raises(C.DimensionCapError):
        C.enumerate_words(2, 2)


def test_bad_sizes():
    with pytest.raises(ValueError):
        C.enumerate_words(0, 2)
    with pytest.raises(ValueError):
        C.enumerate_words(2, -1)
