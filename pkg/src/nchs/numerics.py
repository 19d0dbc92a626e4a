"""Floating-point checks of the operator inequality on concrete matrices.

Random tuples come from SplitMix64 so every language reproduces them:

    state <- state + 0x9E3779B97F4A7C15            (mod 2^64)
    z <- state
    z <- (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9      (mod 2^64)
    z <- (z ^ (z >> 27)) * 0x94D049BB133111EB      (mod 2^64)
    out <- z ^ (z >> 31)

Each output becomes ``2 * (out >> 11) * 2^-53 - 1`` in [-1, 1).  Matrix ``j``
of a tuple is filled upper triangle, row by row, then mirrored; matrices
are filled in order ``X1, X2, ...`` from a single stream seeded with ``seed``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bounds import mu_closed
from .combinatorics import enumerate_words
from .gram import RatMatrix, gram_nc
from .polynomials import MatTuple, eval_nc, nchs, schur_22, sigma

MASK64 = (1 << 64) - 1
PSD_TOL = 1e-8
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


class ConvergenceError(RuntimeError):
    pass


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform on [-1, 1)."""
        return 2.0 * (self.next_u64() >> 11) * 2.0**-53 - 1.0


def random_sym_tuple(n: int, k: int, seed: int) -> MatTuple:
    if k < 1 or n < 1:
        raise ValueError("need n >= 1 and k >= 1")
    rng = SplitMix64(seed)
    mats = []
    for _ in range(n):
        X = np.zeros((k, k))
        for i in range(k):
            for j in range(i, k):
                X[i, j] = X[j, i] = rng.uniform()
        mats.append(X)
    return MatTuple(tuple(mats), exact=False)


def jacobi_eigenvalues(A: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.

    Sweeps visit pivots (p, q), p < q, row by row; iteration stops once the
    off-diagonal Frobenius norm is at most ``tol`` times the full norm.
    """
    A = np.array(A, dtype=float)
    k = A.shape[0]
    if A.shape != (k, k):
        raise ValueError("square matrix expected")
    if not np.array_equal(A, A.T):
        A = (A + A.T) / 2
    scale = np.linalg.norm(A)
    if scale == 0.0 or k == 1:
        return np.sort(np.diag(A))
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= tol * scale:
            return np.sort(np.diag(A))
        for p in range(k - 1):
            for q in range(p + 1, k):
                apq = A[p, q]
                if abs(apq) <= 1e-300 * scale:
                    A[p, q] = A[q, p] = 0.0
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                Ap = A[:, p].copy()
                Aq = A[:, q].copy()
                A[:, p] = c * Ap - s * Aq
                A[:, q] = s * Ap + c * Aq
                Ap = A[p, :].copy()
                Aq = A[q, :].copy()
                A[p, :] = c * Ap - s * Aq
                A[q, :] = s * Ap + c * Aq
                A[p, q] = A[q, p] = 0.0
    raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")


def min_eig_sym(A) -> float:
    return float(jacobi_eigenvalues(A)[0])


def max_eig_sym(A) -> float:
    return float(jacobi_eigenvalues(A)[-1])


def eval_gram_form(G: RatMatrix, X: MatTuple, d: int) -> np.ndarray:
    """sum_{u,v} G[u,v] X_u^T X_v for a float tuple: the value of w* G w at X."""
    words = enumerate_words(X.n, d)
    k = X.k
    W = np.empty((len(words), k, k))
    cache = {(): np.eye(k)}
    for i, w in enumerate(words):
        for r in range(1, len(w) + 1):
            if w[:r] not in cache:
                cache[w[:r]] = cache[w[: r - 1]] @ X.mats[w[r - 1] - 1]
        W[i] = cache[w]
    Gf = np.array([[float(x) for x in row] for row in G.rows])
    return np.einsum("uv,uba,vbc->ac", Gf, W, W)


def power_sum(X: MatTuple, e: int) -> np.ndarray:
    return sum(np.linalg.matrix_power(M, e) for M in X.mats)


@dataclass(frozen=True)
class GapReport:
    n: int
    d: int
    k: int
    param: float
    min_eig_gap: float
    max_eig_power: float
    entry11_gap: float

    def passes(self, tol: float = PSD_TOL) -> bool:
        return self.min_eig_gap >= -tol * (1.0 + self.max_eig_power)


def check_lower_bound(n: int, d: int, X: MatTuple, mu=None, param: float = math.nan) -> GapReport:
    """Spectrum of H_{2d}(X) - mu * sum_j X_j^{2d}; ``mu`` defaults to mu_{n,d}."""
    if X.n != n:
        raise ValueError(f"tuple has {X.n} matrices, expected {n}")
    if X.exact:
        X = MatTuple.float_from([np.array(M, dtype=float) for M in X.mats])
    mu = mu_closed(n, d) if mu is None else mu
    H = eval_gram_form(gram_nc(n, d), X, d)
    P = power_sum(X, 2 * d)
    gap = H - float(mu) * P
    return GapReport(
        n=n,
        d=d,
        k=X.k,
        param=param,
        min_eig_gap=min_eig_sym(gap),
        max_eig_power=max_eig_sym(P),
        entry11_gap=float(gap[0, 0]),
    )


def sample_lower_bound(n: int, d: int, k: int, seeds, mu=None) -> list[GapReport]:
    return [check_lower_bound(n, d, random_sym_tuple(n, k, s), mu, param=s) for s in seeds]


PHI = (1 + math.sqrt(5)) / 2
EXA22_T_MIN = 0.01
EXA22_T_MAX = (2 / 61) ** 0.25


def exa22_family(t: float) -> MatTuple:
    """The extremal 2x2 pair approaching mu_{2,2} = 5/12 as t -> 0."""
    if not EXA22_T_MIN <= t < EXA22_T_MAX:
        raise ValueError(f"t must lie in [{EXA22_T_MIN}, {EXA22_T_MAX:.6f})")
    q = math.sqrt(2 * t**-4 - 61) - 3
    X1 = PHI * t * np.array([[1.0, 1.0], [1.0, q / (2 * PHI**2)]])
    X2 = -t / PHI * np.array([[1.0, 1.0], [1.0, q / (2 * PHI**-2)]])
    return MatTuple((X1, X2), exact=False)



def near_extremal_tuple(k: int, seed: int, eps: float = 1e-3) -> MatTuple:
    """Seeded k x k pairs hugging the extremal family.

    The leading 2x2 block is ``exa22_family(t)`` with ``t`` drawn from
    [0.05, 0.15); every entry then receives ``eps`` times a SplitMix64
    perturbation (filled like :func:`random_sym_tuple`), and the trailing
    block is a full-size random symmetric matrix.
    """
    if k < 2:
        raise ValueError("need k >= 2")
    rng = SplitMix64(seed)
    t = 0.1 + 0.05 * rng.uniform()
    core = exa22_family(t)
    mats = []
    for C in core.mats:
        X = np.zeros((k, k))
        for i in range(k):
            for j in range(i, k):
                base = C[i, j] if i < 2 and j < 2 else 0.0
                noise = rng.uniform()
                X[i, j] = X[j, i] = base + (noise if i >= 2 else eps * noise)
        mats.append(X)
    return MatTuple(tuple(mats), exact=False)


@dataclass(frozen=True)
class Exa22Row:
    t: float
    power11: float
    h11: float
    predicted_h11: float
    gap11: float
    min_eig_gap: float


def exa22_row(t: float) -> Exa22Row:
    X = exa22_family(t)
    H = eval_nc(nchs(2, 4), X)
    P = power_sum(X, 4)
    gap = H - 5 / 12 * P
    return Exa22Row(
        t=t,
        power11=float(P[0, 0]),
        h11=float(H[0, 0]),
        predicted_h11=5 / 12 * (1 + 25 * t**4),
        gap11=float(gap[0, 0]),
        min_eig_gap=min_eig_sym(gap),
    )


NOSCHUR_X = ([[0, 0], [0, 1]], [[2, 1], [1, 0]])


def noschur_counterexample() -> tuple[RatMatrix, float]:
    """Exact value of sigma(x1^2 x2^2) at the fixed pair, and its least eigenvalue."""
    X = MatTuple.exact_from(NOSCHUR_X)
    V = eval_nc(sigma(schur_22()), X)
    exact = RatMatrix(V.tolist())
    return exact, min_eig_sym(np.array(V, dtype=float))


def eig2_closed_form(a: float, b: float, c: float) -> tuple[float, float]:
    """Eigenvalues of [[a, b], [b, c]] by the quadratic formula, ascending."""
    root = math.sqrt((a - c) ** 2 + 4 * b * b)
    return ((a + c) - root) / 2, ((a + c) + root) / 2


@dataclass(frozen=True)
class KernelProbe:
    gap_kernel_dim: int
    common_kernel_dim: int

    @property
    def agree(self) -> bool:
        return self.gap_kernel_dim == self.common_kernel_dim


def _numeric_nullity(A: np.ndarray, tol: float) -> int:
    ev = jacobi_eigenvalues(A)
    scale = 1.0 + float(np.max(np.abs(ev)))
    return int(np.sum(np.abs(ev) <= tol * scale))


def kernel_probe(n: int, d: int, X: MatTuple, tol: float = 1e-9) -> KernelProbe:
    """Compare the kernel of the gap matrix at mu_{n,d} with the common kernel of X.

    The common kernel is read off ``sum_j X_j^2``, whose kernel is the
    intersection of the ``ker X_j`` for symmetric matrices.
    """
    if X.n != n:
        raise ValueError(f"tuple has {X.n} matrices, expected {n}")
    if X.exact:
        X = MatTuple.float_from([np.array(M, dtype=float) for M in X.mats])
    gap = eval_gram_form(gram_nc(n, d), X, d) - float(mu_closed(n, d)) * power_sum(X, 2 * d)
    sq = sum(M @ M for M in X.mats)
    return KernelProbe(_numeric_nullity(gap, tol), _numeric_nullity(sq, tol))

