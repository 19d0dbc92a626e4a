from fractions import Fraction as F
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from nchs.bounds import mu_closed
from nchs.certify import (
    NotPositiveSemidefinite, SOHSCertificate, certificate_gram, commutative_sos,
    cp_witness, expected_term_count, ldl, sohs_certificate, verify_certificate,
)
from nchs.gram import RatMatrix, gram_nc, projection_m
from nchs.polynomials import NCPoly, chs, pi


def test_ldl_g22_natural_order():
    fac = ldl(gram_nc(2, 2))
    assert fac.weights == [1, F(5, 48), F(5, 9)]
    assert fac.pivots == [0, 1, 3]
    assert fac.reconstruct() == gram_nc(2, 2)
    assert fac.is_nonnegative()


def test_ldl_custom_order():
    fac = ldl(gram_nc(2, 2), order=[0, 3, 1, 2])
    assert fac.weights == [1, F(35, 36), F(5, 84)]
    assert fac.reconstruct() == gram_nc(2, 2)


def test_ldl_rejects_bad_input():
    with pytest.raises(ValueError):
        ldl(RatMatrix([[1, 2], [0, 1]]))
    with pytest.raises(ValueError):
        ldl(RatMatrix.identity(2), order=[0, 0])


def test_ldl_negative_diagonal_witness():
    A = RatMatrix([[1, 2], [2, 1]])
    with pytest.raises(NotPositiveSemidefinite) as exc:
        ldl(A)
    assert exc.value.value < 0
    assert A.quad_form(exc.value.witness) == exc.value.value


def test_ldl_zero_diagonal_witness():
    A = RatMatrix([[0, 1], [1, 0]])
    with pytest.raises(NotPositiveSemidefinite) as exc:
        ldl(A)
    assert A.quad_form(exc.value.witness) < 0


def test_ldl_zero_matrix():
    fac = ldl(RatMatrix.zeros(3))
    assert fac.rank == 0
    assert fac.reconstruct() == RatMatrix.zeros(3)


@st.composite
def psd_matrices(draw):
    k = draw(st.integers(1, 4))
    r = draw(st.integers(0, 3))
    vecs = [draw(st.lists(st.integers(-3, 3), min_size=k, max_size=k)) for _ in range(r)]
    rows = [[sum(v[i] * v[j] for v in vecs) for j in range(k)] for i in range(k)]
    return RatMatrix(rows)


@given(psd_matrices())
@settings(max_examples=80, deadline=None)
def test_ldl_reconstructs_psd(A):
    fac = ldl(A)
    assert all(w > 0 for w in fac.weights)
    assert fac.reconstruct() == A


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
@settings(max_examples=80, deadline=None)
def test_ldl_either_factors_or_witnesses(rows):
    A = RatMatrix(rows)
    A = A + A.T
    try:
        fac = ldl(A)
    except NotPositiveSemidefinite as e:
        assert A.quad_form(e.witness) < 0
    else:
        assert fac.reconstruct() == A


@pytest.mark.parametrize("n,d", [(1, 2), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_sohs_minimal_terms(n, d):
    cert = sohs_certificate(n, d)
    ok, residual = verify_certificate(cert)
    assert ok and residual.is_zero()
    assert len(cert) == expected_term_count(n, d) == comb(n - 1 + d, d)
    assert certificate_gram(cert) == gram_nc(n, d)


def test_sohs_at_mu():
    cert = sohs_certificate(2, 2, F(5, 12))
    assert cert.kind == "nchs-minus-mu"
    assert verify_certificate(cert)[0]
    assert cert.weights() == [F(7, 12), F(5, 84)]


def test_sohs_above_mu_fails():
    with pytest.raises(NotPositiveSemidefinite) as exc:
        sohs_certificate(2, 2, F(1, 2))
    A = gram_nc(2, 2) - projection_m(2, 2).scale(F(1, 2))
    assert A.quad_form(exc.value.witness) == exc.value.value == F(-2, 9)


def test_tampered_certificate_rejected():
    cert = sohs_certificate(2, 2)
    lam, s = cert.terms[1]
    cert.terms[1] = (lam + 1, s)
    ok, residual = verify_certificate(cert)
    assert not ok and not residual.is_zero()


def test_nonpositive_weight_rejected():
    x = NCPoly.var(1, 1)
    cert = SOHSCertificate(1, 1, [(F(2), x), (F(-1), x)])
    assert not verify_certificate(cert)[0]


def test_kind_validation():
    with pytest.raises(ValueError):
        SOHSCertificate(2, 1, [], F(1, 2), "nchs")
    with pytest.raises(ValueError):
        SOHSCertificate(2, 1, [], 0, "other")


@pytest.mark.parametrize("n,d", [(2, 2), (3, 2), (2, 3)])
def test_commutative_shadow(n, d):
    squares, ok = commutative_sos(sohs_certificate(n, d))
    assert ok
    assert pi(sohs_certificate(n, d).target()) == chs(n, 2 * d)
    assert len(squares) == comb(n - 1 + d, d)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_cp_witness_g2d(d):
    w = cp_witness(gram_nc(2, d))
    assert w is not None and w.strategy == "natural"
    assert w.factor.reconstruct() == gram_nc(2, d)
    assert w.factor.is_nonnegative()


def test_cp_witness_trivial_and_inconclusive():
    w = cp_witness(gram_nc(1, 3))
    assert w.factor.rows == [[1]]
    # PSD but not completely positive in any pivot order tried: negative off-diagonal
    assert cp_witness(RatMatrix([[1, -1], [-1, 2]]), greedy_budget=100) is None
    assert cp_witness(RatMatrix([[1, 2], [2, 1]])) is None


def test_cp_greedy_fallback():
    # natural order leaves a negative entry in the factor
    A = RatMatrix([[5, 4, 6], [4, 9, 3], [6, 3, 9]])
    assert not ldl(A).is_nonnegative()
    w = cp_witness(A)
    assert w is not None and w.strategy == "greedy"
    assert w.factor.reconstruct() == A and w.factor.is_nonnegative()


def test_mu_boundary_is_sharp_for_ldl():
    mu = mu_closed(2, 3)
    A = gram_nc(2, 3) - projection_m(2, 3).scale(mu)
    assert ldl(A).reconstruct() == A
    with pytest.raises(NotPositiveSemidefinite):
        ldl(gram_nc(2, 3) - projection_m(2, 3).scale(mu + F(1, 1000)))
