"""Exact LDL^T factorization and sum-of-hermitian-squares certificates."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice, permutations
from math import comb, factorial
from typing import Sequence

from .combinatorics import word_index
from .gram import RatMatrix, gram_nc, projection_m, vector_poly
from .polynomials import CPoly, NCPoly, as_rat, nchs, pi, power_sum_nc

MAX_PERMUTATIONS = factorial(8)
MAX_GREEDY_STEPS = 10_000


class NotPositiveSemidefinite(ArithmeticError):
    """The matrix has a direction of negative curvature; ``witness`` exhibits it."""

    def __init__(self, witness: list[Fraction], value: Fraction):
        self.witness = witness
        self.value = value
        super().__init__(f"matrix is not positive semidefinite: v*Av = {value} < 0")


@dataclass
class LDLResult:
    """A = sum_j weights[j] * rows[j] rows[j]^T, with ``rows[j][pivots[j]] == 1``."""

    rows: list[list[Fraction]]
    weights: list[Fraction]
    pivots: list[int]
    size: int
    labels: list | None = None

    @property
    def rank(self) -> int:
        return len(self.weights)

    @property
    def S(self) -> RatMatrix:
        return RatMatrix(self.rows) if self.rows else RatMatrix.zeros(0, self.size)

    @property
    def Lambda(self) -> RatMatrix:
        return RatMatrix.diag(self.weights)

    def reconstruct(self) -> RatMatrix:
        N = self.size
        out = [[Fraction(0)] * N for _ in range(N)]
        for lam, s in zip(self.weights, self.rows):
            nz = [(j, x) for j, x in enumerate(s) if x]
            for i, a in nz:
                la = lam * a
                row = out[i]
                for j, b in nz:
                    row[j] += la * b
        return RatMatrix(out)

    def is_nonnegative(self) -> bool:
        return all(w >= 0 for w in self.weights) and all(x >= 0 for s in self.rows for x in s)


def _pair_witness(R, i: int, j: int) -> dict[int, Fraction]:
    # R[i][i] == 0 <= R[j][j] and R[i][j] != 0: z = a e_i + e_j gives z*Rz = -1
    a = -(R[j][j] + 1) / (2 * R[i][j])
    return {i: a, j: Fraction(1)}


def _lift_witness(z: dict[int, Fraction], rows, pivots, N) -> list[Fraction]:
    # choose pivot coordinates so v is orthogonal to every eliminated row
    v = [Fraction(0)] * N
    for i, x in z.items():
        v[i] = x
    for s, p in zip(reversed(rows), reversed(pivots)):
        v[p] = Fraction(0)
        v[p] = -sum((a * b for a, b in zip(s, v) if a and b), Fraction(0))
    return v


def ldl(A: RatMatrix, order: Sequence[int] | None = None) -> LDLResult:
    """Exact symmetric elimination with diagonal pivoting.

    Remaining indices are scanned in ``order`` (default: natural order) and
    the first strictly positive diagonal entry is the pivot.  A negative
    diagonal entry, or a zero diagonal entry whose row is not zero, proves
    the matrix is not PSD and raises :class:`NotPositiveSemidefinite` with a
    vector ``v`` satisfying ``v* A v < 0``.
    """
    if not A.is_symmetric():
        raise ValueError("ldl requires a symmetric matrix")
    N = A.shape[0]
    R = [list(r) for r in A.rows]
    remaining = list(range(N)) if order is None else list(order)
    if sorted(remaining) != list(range(N)):
        raise ValueError("order must be a permutation of the indices")
    rows: list[list[Fraction]] = []
    weights: list[Fraction] = []
    pivots: list[int] = []

    def fail(z):
        v = _lift_witness(z, rows, pivots, N)
        raise NotPositiveSemidefinite(v, A.quad_form(v))

    while remaining:
        neg = next((i for i in remaining if R[i][i] < 0), None)
        if neg is not None:
            fail({neg: Fraction(1)})
        p = next((i for i in remaining if R[i][i] > 0), None)
        if p is None:
            for i in remaining:
                for j in remaining:
                    if R[i][j]:
                        fail(_pair_witness(R, i, j))
            break
        lam = R[p][p]
        remaining.remove(p)
        s = [Fraction(0)] * N
        s[p] = Fraction(1)
        Rp = R[p]
        for j in remaining:
            if Rp[j]:
                s[j] = Rp[j] / lam
        nz = [j for j in remaining if s[j]]
        for i in nz:
            li = lam * s[i]
            Ri = R[i]
            for j in nz:
                Ri[j] -= li * s[j]
        rows.append(s)
        weights.append(lam)
        pivots.append(p)
    return LDLResult(rows, weights, pivots, N, A.labels)


@dataclass
class SOHSCertificate:
    """Claims ``target == sum_j weight_j * s_j^* s_j`` for the stated target.

    The target is ``H_{2d}`` (``kind == "nchs"``) or
    ``H_{2d} - mu * (x1^{2d} + ... + xn^{2d})`` (``kind == "nchs-minus-mu"``).
    """

    n: int
    d: int
    terms: list[tuple[Fraction, NCPoly]]
    mu: Fraction = Fraction(0)
    kind: str = "nchs"
    pivots: list[int] = field(default_factory=list)

    def __post_init__(self):
        if self.kind not in ("nchs", "nchs-minus-mu"):
            raise ValueError(f"unknown target kind {self.kind!r}")
        self.mu = as_rat(self.mu)
        if self.kind == "nchs" and self.mu:
            raise ValueError("target kind 'nchs' carries mu = 0")

    def target(self) -> NCPoly:
        H = nchs(self.n, 2 * self.d)
        if self.mu:
            H = H - power_sum_nc(self.n, 2 * self.d).scale(self.mu)
        return H

    def expand(self) -> NCPoly:
        total = NCPoly(self.n)
        for lam, s in self.terms:
            total = total + (s.star() * s).scale(lam)
        return total

    def weights(self) -> list[Fraction]:
        return [lam for lam, _ in self.terms]

    def __len__(self) -> int:
        return len(self.terms)


def sohs_certificate(n: int, d: int, mu=0) -> SOHSCertificate:
    """Weighted SOHS certificate for ``H_{2d} - mu * sum_j xj^{2d}``.

    Factors ``G_{n,d} - mu M_{n,d}``; raises :class:`NotPositiveSemidefinite`
    when ``mu`` exceeds the sharp constant.
    """
    mu = as_rat(mu)
    G = gram_nc(n, d)
    if mu:
        G = G - projection_m(n, d).scale(mu)
    fac = ldl(G)
    terms = [(lam, vector_poly(s, n, d)) for lam, s in zip(fac.weights, fac.rows)]
    return SOHSCertificate(n, d, terms, mu, "nchs-minus-mu" if mu else "nchs", fac.pivots)


def verify_certificate(cert: SOHSCertificate) -> tuple[bool, NCPoly]:
    """Expand the certificate exactly; returns (valid, target - expansion)."""
    well_formed = all(
        lam > 0 and s.n == cert.n and s.is_homogeneous(cert.d) for lam, s in cert.terms
    )
    residual = cert.target() - cert.expand()
    return well_formed and residual.is_zero(), residual


def commutative_sos(cert: SOHSCertificate) -> tuple[list[tuple[Fraction, CPoly]], bool]:
    """Abelianize each square; checks sum_j weight_j * pi(s_j)^2 == pi(target)."""
    squares = [(lam, pi(s)) for lam, s in cert.terms]
    total = CPoly(cert.n)
    for lam, p in squares:
        total = total + (p * p).scale(lam)
    return squares, total == pi(cert.target())


def certificate_gram(cert: SOHSCertificate) -> RatMatrix:
    """sum_j weight_j * c_j c_j^T where c_j is the coefficient vector of s_j."""
    N = cert.n**cert.d
    out = [[Fraction(0)] * N for _ in range(N)]
    for lam, s in cert.terms:
        c = [(word_index(w, cert.n), x) for w, x in s.terms.items()]
        for i, a in c:
            for j, b in c:
                out[i][j] += lam * a * b
    return RatMatrix(out)


@dataclass
class CPWitness:
    factor: LDLResult
    strategy: str


def _letter_orders(labels, n_letters: int):
    # one scan order per relabelling of the variables, identity first
    for perm in islice(permutations(range(1, n_letters + 1)), MAX_PERMUTATIONS):
        relabel = {a + 1: p for a, p in enumerate(perm)}
        keys = [word_index(tuple(relabel[x] for x in w), n_letters) for w in labels]
        yield perm, sorted(range(len(labels)), key=keys.__getitem__)


def _greedy(A: RatMatrix, budget: int) -> LDLResult | None:
    N = A.shape[0]
    R = [list(r) for r in A.rows]
    remaining = list(range(N))
    rows, weights, pivots = [], [], []
    steps = 0
    while remaining:
        # a pivot is admissible when its row and the residual it leaves
        # behind are both entrywise nonnegative
        choice = None
        for p in remaining:
            steps += 1
            if steps > budget:
                return None
            lam = R[p][p]
            if lam <= 0 or any(R[p][j] < 0 for j in remaining):
                continue
            if all(
                R[i][j] * lam >= R[p][i] * R[p][j]
                for i in remaining if i != p and R[p][i]
                for j in remaining if j != p and R[p][j] and i != j
            ):
                choice = p
                break
        if choice is None:
            if all(R[i][j] == 0 for i in remaining for j in remaining):
                break
            return None
        p = choice
        lam = R[p][p]
        remaining.remove(p)
        s = [Fraction(0)] * N
        s[p] = Fraction(1)
        for j in remaining:
            s[j] = R[p][j] / lam
        nz = [j for j in remaining if s[j]]
        for i in nz:
            for j in nz:
                R[i][j] -= lam * s[i] * s[j]
        rows.append(s)
        weights.append(lam)
        pivots.append(p)
    return LDLResult(rows, weights, pivots, N, A.labels)


def _word_labelled(labels) -> bool:
    if not labels or not all(isinstance(w, tuple) and w for w in labels):
        return False
    n_letters = max(max(w) for w in labels)
    return min(min(w) for w in labels) >= 1 and len(labels) == n_letters ** len(labels[0])


def cp_witness(A: RatMatrix, greedy_budget: int = MAX_GREEDY_STEPS) -> CPWitness | None:
    """Search for A = S^T diag(w) S with S and w entrywise nonnegative.

    Tries the natural LDL order, then every relabelling of the variables
    (when rows are labelled by words), then a greedy pivot search.  A result
    is a proof of complete positivity; ``None`` proves nothing.
    """
    candidates = [("natural", None)]
    labels = A.labels
    if _word_labelled(labels):
        n_letters = max(max(w) for w in labels)
        for perm, order in _letter_orders(labels, n_letters):
            if list(perm) != sorted(perm):
                candidates.append((f"relabel {perm}", order))
    for name, order in candidates:
        try:
            fac = ldl(A, order)
        except NotPositiveSemidefinite:
            return None
        if fac.is_nonnegative():
            return CPWitness(fac, name)
    fac = _greedy(A, greedy_budget)
    if fac is not None:
        return CPWitness(fac, "greedy")
    return None


def expected_term_count(n: int, d: int) -> int:
    return comb(n - 1 + d, d)
