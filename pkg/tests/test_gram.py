from fractions import Fraction as F
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from nchs.combinatorics import abelianize, enumerate_words
from nchs.gram import (
    RatMatrix, echelon, gram_c, gram_nc, gram_of_poly, matrix_b, poly_of_gram,
    poly_vector, projection_m, rank, rank_kernel, vector_poly,
)
from nchs.polynomials import NCPoly, nchs

G22 = [
    [1, F(1, 4), F(1, 4), F(1, 6)],
    [F(1, 4), F(1, 6), F(1, 6), F(1, 4)],
    [F(1, 4), F(1, 6), F(1, 6), F(1, 4)],
    [F(1, 6), F(1, 4), F(1, 4), 1],
]


def test_g21_and_g22():
    assert gram_nc(2, 1) == [[1, F(1, 2)], [F(1, 2), 1]]
    assert gram_nc(2, 2) == G22
    assert gram_nc(2, 2).labels == [(1, 1), (1, 2), (2, 1), (2, 2)]


def test_gram_c():
    # monomials x1^2, x1 x2, x2^2
    assert gram_c(2, 2) == [
        [1, F(1, 4), F(1, 6)],
        [F(1, 4), F(1, 6), F(1, 4)],
        [F(1, 6), F(1, 4), 1],
    ]


def test_projection_and_b():
    assert projection_m(2, 1) == RatMatrix.identity(2)
    M = projection_m(2, 2)
    assert [M[i, i] for i in range(4)] == [1, 0, 0, 1]
    assert projection_m(2, 2, basis="monomials") == RatMatrix.diag([1, 0, 1])
    assert matrix_b(2, 1) == RatMatrix.identity(2)
    B = matrix_b(2, 2)
    assert B[0, 0] == 1 and B[3, 3] == 1 and B[0, 3] == 1
    # (x1 x2)* x1 x2 = x2 x1 x1 x2 does not split into squares
    assert B[1, 1] == 0 and B[1, 2] == 0


@pytest.mark.parametrize("n,d", [(2, 2), (2, 3), (3, 2)])
def test_b_expands_to_power_of_squares(n, d):
    sq = NCPoly(n)
    for j in range(1, n + 1):
        sq = sq + NCPoly.var(n, j) * NCPoly.var(n, j)
    assert poly_of_gram(matrix_b(n, d), n, d) == sq**d


@pytest.mark.parametrize("n,d", [(1, 2), (2, 1), (2, 3), (3, 2), (3, 3)])
def test_gram_identity(n, d):
    G = gram_nc(n, d)
    assert G.is_symmetric()
    assert poly_of_gram(G, n, d) == nchs(n, 2 * d)
    assert gram_of_poly(nchs(n, 2 * d)) == G


def test_poly_vector_roundtrip():
    f = NCPoly(2, {(1, 2): 3, (2, 2): F(-1, 2)})
    v = poly_vector(f, 2)
    assert v == [0, 3, 0, F(-1, 2)]
    assert vector_poly(v, 2, 2) == f
    with pytest.raises(ValueError):
        poly_vector(f, 3)


def test_gram_of_poly_errors():
    with pytest.raises(ValueError):
        gram_of_poly(NCPoly(2, {(1,): 1}))
    with pytest.raises(ValueError):
        gram_of_poly(NCPoly(2, {(1, 1): 1, (1,): 1}))
    with pytest.raises(ValueError):
        gram_of_poly(NCPoly(2))


@pytest.mark.parametrize("n,d", [(1, 3), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_rank_law_and_kernel(n, d):
    r, ker = rank_kernel(gram_nc(n, d))
    assert r == comb(n - 1 + d, d)
    assert len(ker) == n**d - r
    G = gram_nc(n, d)
    words = enumerate_words(n, d)
    for v in ker:
        assert not any(G.matvec(v))
        first = next(x for x in v if x)
        assert first > 0
        totals = {}
        for w, x in zip(words, v):
            m = abelianize(w, n)
            totals[m] = totals.get(m, 0) + x
        assert not any(totals.values())


def test_echelon_known():
    A = RatMatrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(A) == 2
    _, ker = rank_kernel(A)
    assert ker == [[1, 1, -1]]


@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=4))
@settings(max_examples=60, deadline=None)
def test_rank_nullity(rows):
    A = RatMatrix(rows)
    r, ker = rank_kernel(A)
    assert r + len(ker) == 3
    for v in ker:
        assert not any(A.matvec(v))
    rows_e, pivots = echelon(A)
    assert len(pivots) == r


def test_matrix_arithmetic():
    A = RatMatrix([[1, 2], [3, 4]])
    assert A.T == [[1, 3], [2, 4]]
    assert A @ RatMatrix.identity(2) == A
    assert (A - A) == RatMatrix.zeros(2)
    assert A.quad_form([1, -1]) == 1 - 2 - 3 + 4
    assert A.to_strings() == [["1", "2"], ["3", "4"]]
    assert A.permuted([1, 0]) == [[4, 3], [2, 1]]
