"""The sharp constant mu_{n,d} and the quantities that surround it.

``mu_{n,d}`` is the largest ``mu`` with ``G_{n,d} - mu M_{n,d}`` PSD.  It is
computed two ways: by the closed formula, and by forming the Schur
complement of the monomial Gram matrix on the pure powers ``x_j^d`` with
exact elimination.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .combinatorics import enumerate_monomials, gen_binomial
from .gram import RatMatrix, gram_c, gram_nc, matrix_b, poly_vector
from .polynomials import CPoly, NCPoly

SCHUR_LIMIT = 200


def _check(n: int, d: int) -> None:
    if n < 1 or d < 1:
        raise ValueError(f"need n >= 1 and d >= 1, got n={n}, d={d}")


def delta(n: int, d: int) -> int:
    return 1 if d % 2 else n - 1


def mu_closed(n: int, d: int) -> Fraction:
    _check(n, d)
    if n == 1:
        return Fraction(1)
    b = comb(n - 1 + d, d)
    return Fraction(comb(n - 1 + 2 * d, 2 * d), b * (b + delta(n, d)))


def rho(n: int, d: int) -> tuple[Fraction, Fraction]:
    """Diagonal and off-diagonal entries of the pure-power block of G~^{-1}."""
    _check(n, d)
    b = comb(n - 1 + d, d)
    b2 = comb(n - 1 + 2 * d, 2 * d)
    return Fraction(b * b, b2), Fraction((-1) ** d * b, b2)


def _solve(C: list[list[Fraction]], B: list[list[Fraction]]) -> list[list[Fraction]]:
    """Solve C X = B exactly by Gauss-Jordan elimination (C nonsingular)."""
    m = len(C)
    aug = [list(C[i]) + list(B[i]) for i in range(m)]
    for col in range(m):
        p = next(i for i in range(col, m) if aug[i][col])
        aug[col], aug[p] = aug[p], aug[col]
        pv = aug[col][col]
        row = [x / pv for x in aug[col]]
        aug[col] = row
        for i in range(m):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], row)]
    return [r[m:] for r in aug]


def schur_complement(n: int, d: int) -> RatMatrix:
    """A - B^T C^{-1} B for G~_{n,d} split into pure powers x_j^d and the rest."""
    _check(n, d)
    mons = enumerate_monomials(n, d)
    G = gram_c(n, d)
    pure = [mons.index(tuple(d * int(i == j) for i in range(n))) for j in range(n)]
    rest = [i for i in range(len(mons)) if i not in pure]
    A = G.submatrix(pure, pure)
    if not rest:
        return A
    B = G.submatrix(rest, pure).rows
    C = G.submatrix(rest, rest).rows
    X = _solve(C, B)
    out = [
        [
            A[i, j] - sum((B[r][i] * X[r][j] for r in range(len(rest))), Fraction(0))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return RatMatrix(out)


def _inverse(M: RatMatrix) -> RatMatrix:
    I = RatMatrix.identity(M.shape[0]).rows
    return RatMatrix(_solve(M.rows, I))


def mu_schur(n: int, d: int) -> Fraction:
    """Smallest eigenvalue of the Schur complement, found without an eigensolver.

    Permutation invariance makes the complement ``a I + b (J - I)``, whose
    eigenvalues are ``a + (n - 1) b`` and ``a - b``; the structure is checked
    entrywise, as is the diagonal/off-diagonal pattern of its inverse against
    :func:`rho`.
    """
    S = schur_complement(n, d)
    a = S[0, 0]
    b = S[0, 1] if n > 1 else Fraction(0)
    for i in range(n):
        for j in range(n):
            if S[i, j] != (a if i == j else b):
                raise ArithmeticError("Schur complement lacks the expected symmetric structure")
    if n > 1:
        Ginv = _inverse(S)
        r0, r1 = rho(n, d)
        if Ginv[0, 0] != r0 or Ginv[0, 1] != r1:
            raise ArithmeticError("inverse of the Schur complement disagrees with rho")
        return min(a + (n - 1) * b, a - b)
    return a


def inverse_image_x1d(n: int, d: int) -> CPoly:
    """The polynomial that G~_{n,d} maps to x1^d, expanded in monomials."""
    _check(n, d)
    scale = Fraction(comb(n - 1 + d, d), comb(n - 1 + 2 * d, 2 * d))
    x1 = CPoly.var(n, 1)
    rest = CPoly(n)
    for j in range(2, n + 1):
        rest = rest + CPoly.var(n, j)
    total = CPoly(n)
    for i in range(d + 1):
        c = (-1) ** (d - i) * comb(d, i) * comb(n - 1 + d, i)
        total = total + ((x1**i) * (rest ** (d - i))).scale(c)
    return total.scale(scale)


def apply_gram_c(p: CPoly, d: int) -> CPoly:
    """Apply G~_{n,d} as a linear map on degree-d polynomials."""
    mons = enumerate_monomials(p.n, d)
    G = gram_c(p.n, d)
    v = G.matvec([p.coeff(m) for m in mons])
    return CPoly(p.n, {m: c for m, c in zip(mons, v) if c})


def vandermonde_lhs(m: int, d: int, l: int) -> int:
    return sum(
        gen_binomial(m, k) * gen_binomial(l + k, k) * gen_binomial(l - m, d - k)
        for k in range(d + 1)
    )


def vandermonde_identity_check(m: int, d: int, l: int) -> bool:
    """sum_k C(m,k) C(l+k,k) C(l-m,d-k) == C(l,d) C(m+d,d) for generalized binomials."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    return vandermonde_lhs(m, d, l) == gen_binomial(l, d) * gen_binomial(m + d, d)


def k_dim(n: int, d: int) -> int:
    """Matrix size sufficient for operator positivity: 1 + n + ... + n^d."""
    return sum(n**i for i in range(d + 1))


def hunter_constant(d: int) -> Fraction:
    return Fraction(1, 2**d * factorial(d))


def limit_constant(d: int) -> Fraction:
    return Fraction(1, comb(2 * d, d))


@dataclass(frozen=True)
class BoundReport:
    n: int
    d: int
    mu_closed: Fraction
    mu_schur: Fraction
    schur_checked: bool
    rho0: Fraction
    rho1: Fraction
    delta: int
    k_dim: int
    scalar_bound: Fraction
    hunter_bound: Fraction
    limit_bound: Fraction

    @property
    def improves_hunter(self) -> bool:
        return self.scalar_bound > self.hunter_bound


def bound_report(n: int, d: int, schur_limit: int = SCHUR_LIMIT) -> BoundReport:
    _check(n, d)
    mc = mu_closed(n, d)
    checked = comb(n - 1 + d, d) <= schur_limit
    ms = mu_schur(n, d) if checked else mc
    if ms != mc:
        raise ArithmeticError(f"closed form {mc} and Schur route {ms} disagree at n={n}, d={d}")
    r0, r1 = rho(n, d) if n > 1 else (Fraction(1), Fraction(0))
    return BoundReport(
        n=n,
        d=d,
        mu_closed=mc,
        mu_schur=ms,
        schur_checked=checked,
        rho0=r0,
        rho1=r1,
        delta=delta(n, d),
        k_dim=k_dim(n, d),
        scalar_bound=mc / n ** (d - 1),
        hunter_bound=hunter_constant(d),
        limit_bound=limit_constant(d),
    )


def nobound_witness(n: int, d: int) -> NCPoly:
    """f = x1^{d-3} (x1 x2^2 - x2^2 x1): in the kernel of G_{n,d} but not of B_{n,d}."""
    if n < 2 or d < 3:
        raise ValueError("witness needs n >= 2 and d >= 3")
    prefix = (1,) * (d - 3)
    return NCPoly(n, {prefix + (1, 2, 2): 1, prefix + (2, 2, 1): -1})


def nobound_check(n: int, d: int) -> tuple[list[Fraction], list[Fraction]]:
    """Return (G_{n,d} f, B_{n,d} f) for the witness f."""
    f = poly_vector(nobound_witness(n, d), d)
    return gram_nc(n, d).matvec(f), matrix_b(n, d).matvec(f)
