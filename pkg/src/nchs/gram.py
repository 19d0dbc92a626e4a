"""Combinatorial Gram matrices and exact linear algebra over the rationals.

``gram_nc(n, d)`` is indexed by words of degree ``d``; its ``(u, v)`` entry is
the reciprocal of the fiber size of ``u* v``.  ``gram_c(n, d)`` is the same
construction on monomials.  Sandwiching ``gram_nc`` between the word vector
reproduces ``H_{2d}`` exactly (see :func:`poly_of_gram`).
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .combinatorics import (
    Monomial,
    Word,
    abelianize,
    enumerate_monomials,
    enumerate_words,
    fiber_size,
    word_index,
)
from .polynomials import NCPoly, as_rat, rat_str


class RatMatrix:
    """Dense rational matrix with optional row/column labels (words or monomials)."""

    __slots__ = ("rows", "labels")

    def __init__(self, rows: Sequence[Sequence], labels: Sequence | None = None):
        self.rows = [[as_rat(x) for x in row] for row in rows]
        width = len(self.rows[0]) if self.rows else 0
        if any(len(r) != width for r in self.rows):
            raise ValueError("ragged matrix")
        if labels is not None and len(labels) != len(self.rows):
            raise ValueError("label count does not match rows")
        self.labels = list(labels) if labels is not None else None

    @classmethod
    def zeros(cls, r: int, c: int | None = None, labels=None) -> RatMatrix:
        c = r if c is None else c
        return cls([[Fraction(0)] * c for _ in range(r)], labels)

    @classmethod
    def identity(cls, r: int, labels=None) -> RatMatrix:
        M = cls.zeros(r, r, labels)
        for i in range(r):
            M.rows[i][i] = Fraction(1)
        return M

    @classmethod
    def diag(cls, values: Sequence, labels=None) -> RatMatrix:
        M = cls.zeros(len(values), len(values), labels)
        for i, v in enumerate(values):
            M.rows[i][i] = as_rat(v)
        return M

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __setitem__(self, ij, value):
        i, j = ij
        self.rows[i][j] = as_rat(value)

    def copy(self) -> RatMatrix:
        return RatMatrix([list(r) for r in self.rows], self.labels)

    def transpose(self) -> RatMatrix:
        r, c = self.shape
        return RatMatrix([[self.rows[i][j] for i in range(r)] for j in range(c)])

    T = property(transpose)

    def is_symmetric(self) -> bool:
        r, c = self.shape
        return r == c and all(
            self.rows[i][j] == self.rows[j][i] for i in range(r) for j in range(i + 1, r)
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, RatMatrix):
            return self.rows == other.rows
        if isinstance(other, (list, tuple)):
            return self.rows == [[as_rat(x) for x in row] for row in other]
        return NotImplemented

    def __add__(self, other: RatMatrix) -> RatMatrix:
        self._same_shape(other)
        return RatMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.labels
        )

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        self._same_shape(other)
        return RatMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.labels
        )

    def scale(self, c) -> RatMatrix:
        c = as_rat(c)
        return RatMatrix([[c * a for a in r] for r in self.rows], self.labels)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            cols = list(zip(*other.rows))
            return RatMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self.rows])
        return self.matvec(other)

    def matvec(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.shape[1]:
            raise ValueError("vector length does not match column count")
        v = [as_rat(x) for x in v]
        nz = [(j, x) for j, x in enumerate(v) if x]
        return [sum((row[j] * x for j, x in nz), Fraction(0)) for row in self.rows]

    def quad_form(self, v: Sequence) -> Fraction:
        Av = self.matvec(v)
        return sum((as_rat(a) * b for a, b in zip(v, Av)), Fraction(0))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> RatMatrix:
        return RatMatrix([[self.rows[i][j] for j in cols] for i in rows])

    def permuted(self, order: Sequence[int]) -> RatMatrix:
        """Simultaneous row/column reordering: entry (i, j) becomes (order[i], order[j])."""
        labels = [self.labels[i] for i in order] if self.labels is not None else None
        return RatMatrix([[self.rows[i][j] for j in order] for i in order], labels)

    def to_strings(self) -> list[list[str]]:
        return [[rat_str(x) for x in r] for r in self.rows]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(rat_str(x) for x in r) for r in self.rows)
        return f"RatMatrix([{body}])"


def _fiber_recip(cache: dict, m: Monomial) -> Fraction:
    x = cache.get(m)
    if x is None:
        x = cache[m] = Fraction(1, fiber_size(m))
    return x


def gram_nc(n: int, d: int) -> RatMatrix:
    """G_{n,d}: entry (u, v) = 1 / |fiber of abelianize(u* v)|."""
    words = enumerate_words(n, d)
    abel = [abelianize(w, n) for w in words]
    cache: dict[Monomial, Fraction] = {}
    rows = []
    for a in abel:
        rows.append([_fiber_recip(cache, tuple(x + y for x, y in zip(a, b))) for b in abel])
    M = RatMatrix.__new__(RatMatrix)
    M.rows, M.labels = rows, words
    return M


def gram_c(n: int, d: int) -> RatMatrix:
    """G~_{n,d}: entry (u, v) = 1 / |fiber of uv| over degree-d monomials."""
    mons = enumerate_monomials(n, d)
    cache: dict[Monomial, Fraction] = {}
    rows = [[_fiber_recip(cache, tuple(x + y for x, y in zip(a, b))) for b in mons] for a in mons]
    M = RatMatrix.__new__(RatMatrix)
    M.rows, M.labels = rows, mons
    return M


def projection_m(n: int, d: int, basis: str = "words") -> RatMatrix:
    """Diagonal 0/1 projection onto span{x1^d, ..., xn^d} in the chosen basis."""
    if basis == "words":
        labels = enumerate_words(n, d)
        hits = {(j,) * d for j in range(1, n + 1)}
    elif basis == "monomials":
        labels = enumerate_monomials(n, d)
        hits = {tuple(d * int(i == j) for i in range(n)) for j in range(n)}
    else:
        raise ValueError("basis must be 'words' or 'monomials'")
    return RatMatrix.diag([int(x in hits) for x in labels], labels)


def _is_square_word(w: Word) -> bool:
    return all(w[i] == w[i + 1] for i in range(0, len(w), 2))


def matrix_b(n: int, d: int) -> RatMatrix:
    """B_{n,d}: entry (u, v) is 1 iff u* v is a word in x1^2, ..., xn^2."""
    if d < 1:
        raise ValueError("need d >= 1")
    words = enumerate_words(n, d)
    rows = [[Fraction(int(_is_square_word(u[::-1] + v))) for v in words] for u in words]
    M = RatMatrix.__new__(RatMatrix)
    M.rows, M.labels = rows, words
    return M


def poly_vector(f: NCPoly, d: int) -> list[Fraction]:
    """Coefficients of a degree-``d`` homogeneous ``f`` along the word basis."""
    if not f.is_homogeneous(d):
        raise ValueError(f"polynomial is not homogeneous of degree {d}")
    v = [Fraction(0)] * f.n**d
    for w, c in f.terms.items():
        v[word_index(w, f.n)] = c
    return v


def vector_poly(v: Sequence, n: int, d: int) -> NCPoly:
    words = enumerate_words(n, d)
    if len(v) != len(words):
        raise ValueError("vector length does not match the word basis")
    return NCPoly(n, {w: c for w, c in zip(words, v) if c})


def gram_of_poly(f: NCPoly) -> RatMatrix:
    """The unique matrix A with f = w* A w, where A[u, v] = coeff of u* v in f."""
    degs = f.degrees()
    if len(degs) > 1:
        raise ValueError("polynomial is not homogeneous")
    if not degs:
        raise ValueError("degree of the zero polynomial is undetermined; use RatMatrix.zeros")
    (deg,) = degs
    if deg % 2:
        raise ValueError(f"odd degree {deg}")
    d = deg // 2
    words = enumerate_words(f.n, d)
    A = RatMatrix.zeros(len(words), len(words), words)
    for w, c in f.terms.items():
        u = w[:d][::-1]
        v = w[d:]
        A.rows[word_index(u, f.n)][word_index(v, f.n)] = c
    return A


def poly_of_gram(A: RatMatrix, n: int, d: int) -> NCPoly:
    """w* A w as a noncommutative polynomial."""
    words = enumerate_words(n, d)
    if A.shape != (len(words), len(words)):
        raise ValueError(f"expected a {len(words)}x{len(words)} matrix, got {A.shape}")
    terms: dict[Word, Fraction] = {}
    for i, u in enumerate(words):
        us = u[::-1]
        row = A.rows[i]
        for j, v in enumerate(words):
            if row[j]:
                w = us + v
                terms[w] = terms.get(w, Fraction(0)) + row[j]
    return NCPoly(n, terms)


def _integer_rows(A: RatMatrix) -> list[list[int]]:
    out = []
    for row in A.rows:
        m = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * m) for x in row])
    return out


def _primitive(v: list[Fraction]) -> list[int]:
    m = lcm(*(x.denominator for x in v))
    ints = [int(x * m) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints] if g else ints
    first = next((x for x in ints if x), 0)
    return [-x for x in ints] if first < 0 else ints


def echelon(A: RatMatrix) -> tuple[list[list[int]], list[int]]:
    """Fraction-free (Bareiss) row echelon form of the integer-scaled rows.

    Returns the echelon rows and pivot column of each nonzero row.
    """
    M = _integer_rows(A)
    r, c = A.shape
    pivots: list[int] = []
    prev = 1
    row = 0
    for col in range(c):
        if row == r:
            break
        p = next((i for i in range(row, r) if M[i][col]), None)
        if p is None:
            continue
        M[row], M[p] = M[p], M[row]
        piv = M[row][col]
        for i in range(row + 1, r):
            a = M[i][col]
            Mi = M[i]
            Mr = M[row]
            for j in range(col + 1, c):
                Mi[j] = (piv * Mi[j] - a * Mr[j]) // prev
            Mi[col] = 0
        prev = piv
        pivots.append(col)
        row += 1
    return M[: len(pivots)], pivots


def rank_kernel(A: RatMatrix) -> tuple[int, list[list[int]]]:
    """Exact rank and a null-space basis of primitive integer vectors.

    One basis vector per free column, with that column set to 1 before
    normalization (reduced echelon convention), rescaled to coprime integers
    whose first nonzero entry is positive.
    """
    E, pivots = echelon(A)
    rank = len(pivots)
    ncols = A.shape[1]
    free = [j for j in range(ncols) if j not in set(pivots)]
    kernel = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i in range(rank - 1, -1, -1):
            pc = pivots[i]
            s = sum((E[i][j] * x[j] for j in range(pc + 1, ncols) if x[j]), Fraction(0))
            x[pc] = -s / E[i][pc]
        kernel.append(_primitive(x))
    return rank, kernel


def rank(A: RatMatrix) -> int:
    return len(echelon(A)[1])
