"""Exact polynomials in free and commuting variables, and their evaluation.

Coefficients are :class:`fractions.Fraction`.  ``NCPoly`` maps words to
coefficients, ``CPoly`` maps exponent tuples to coefficients; neither stores
zero coefficients.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

import numpy as np

from .combinatorics import (
    Monomial,
    Word,
    abelianize,
    enumerate_monomials,
    enumerate_words,
    fiber_size,
    monomial_str,
    word_str,
)

Rat = Fraction


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


def rat_str(x: Fraction) -> str:
    """Reduced ``p/q`` (or ``p`` when integral)."""
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _render(items, key_str) -> str:
    if not items:
        return "0"
    out = []
    for key, c in items:
        sign = "-" if c < 0 else "+"
        a = abs(c)
        body = key_str(key)
        if body == "1":
            term = rat_str(a)
        elif a == 1:
            term = body
        else:
            term = f"{rat_str(a)} {body}"
        out.append((sign, term))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, term in out[1:]:
        s += f" {sign} {term}"
    return s


class NCPoly:
    """Element of the free *-algebra on ``x1..xn`` with rational coefficients."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[Word, object] | None = None):
        if n < 1:
            raise ValueError("need at least one variable")
        self.n = n
        clean: dict[Word, Fraction] = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if any(not 1 <= a <= n for a in w):
                raise ValueError(f"word {w} uses a letter outside 1..{n}")
            c = as_rat(c)
            if c:
                clean[w] = clean.get(w, Fraction(0)) + c
        self._terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def var(cls, n: int, j: int) -> NCPoly:
        return cls(n, {(j,): 1})

    @classmethod
    def constant(cls, n: int, c) -> NCPoly:
        return cls(n, {(): c})

    @classmethod
    def _raw(cls, n: int, terms: dict[Word, Fraction]) -> NCPoly:
        p = cls.__new__(cls)
        p.n = n
        p._terms = {w: c for w, c in terms.items() if c}
        return p

    @property
    def terms(self) -> dict[Word, Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def coeff(self, w: Word) -> Fraction:
        return self._terms.get(tuple(w), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> set[int]:
        return {len(w) for w in self._terms}

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return d is None or degs == {d}

    def _check(self, other: NCPoly) -> None:
        if not isinstance(other, NCPoly):
            raise TypeError("expected NCPoly")
        if other.n != self.n:
            raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")

    def __add__(self, other: NCPoly) -> NCPoly:
        self._check(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return NCPoly._raw(self.n, out)

    def __neg__(self) -> NCPoly:
        return NCPoly._raw(self.n, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other: NCPoly) -> NCPoly:
        return self + (-other)

    def scale(self, c) -> NCPoly:
        c = as_rat(c)
        return NCPoly._raw(self.n, {w: c * a for w, a in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(other)
        self._check(other)
        out: dict[Word, Fraction] = defaultdict(Fraction)
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                out[u + v] += a * b
        return NCPoly._raw(self.n, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> NCPoly:
        out = NCPoly.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def star(self) -> NCPoly:
        """The involution: reverse every word, keep coefficients."""
        return NCPoly._raw(self.n, {tuple(reversed(w)): c for w, c in self._terms.items()})

    def is_hermitian(self) -> bool:
        return all(self._terms.get(tuple(reversed(w))) == c for w, c in self._terms.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, NCPoly):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __str__(self) -> str:
        return _render(self.items(), word_str)

    def __repr__(self) -> str:
        return f"NCPoly({self.n}, {str(self)!r})"


class CPoly:
    """Polynomial in commuting ``x1..xn`` keyed by exponent tuples."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[Monomial, object] | None = None):
        if n < 1:
            raise ValueError("need at least one variable")
        self.n = n
        clean: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != n or any(k < 0 for k in m):
                raise ValueError(f"bad exponent vector {m} for {n} variables")
            c = as_rat(c)
            clean[m] = clean.get(m, Fraction(0)) + c
        self._terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def _raw(cls, n, terms) -> CPoly:
        p = cls.__new__(cls)
        p.n = n
        p._terms = {m: c for m, c in terms.items() if c}
        return p

    @classmethod
    def var(cls, n: int, j: int) -> CPoly:
        return cls(n, {tuple(int(i == j - 1) for i in range(n)): 1})

    @classmethod
    def constant(cls, n: int, c) -> CPoly:
        return cls(n, {(0,) * n: c})

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), [-k for k in kv[0]]))

    def coeff(self, m: Monomial) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: CPoly) -> None:
        if not isinstance(other, CPoly):
            raise TypeError("expected CPoly")
        if other.n != self.n:
            raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")

    def __add__(self, other: CPoly) -> CPoly:
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return CPoly._raw(self.n, out)

    def __neg__(self) -> CPoly:
        return CPoly._raw(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: CPoly) -> CPoly:
        return self + (-other)

    def scale(self, c) -> CPoly:
        c = as_rat(c)
        return CPoly._raw(self.n, {m: c * a for m, a in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, CPoly):
            return self.scale(other)
        self._check(other)
        out: dict[Monomial, Fraction] = defaultdict(Fraction)
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                out[tuple(i + j for i, j in zip(u, v))] += a * b
        return CPoly._raw(self.n, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> CPoly:
        out = CPoly.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, CPoly):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __str__(self) -> str:
        return _render(self.items(), monomial_str)

    def __repr__(self) -> str:
        return f"CPoly({self.n}, {str(self)!r})"


def involution(p: NCPoly) -> NCPoly:
    return p.star()


def pi(p: NCPoly) -> CPoly:
    """Abelianize every word of ``p`` and sum coefficients."""
    out: dict[Monomial, Fraction] = defaultdict(Fraction)
    for w, c in p._terms.items():
        out[abelianize(w, p.n)] += c
    return CPoly._raw(p.n, out)


def _fiber(m: Monomial) -> list[Word]:
    # distinct permutations of the sorted letter sequence
    letters = [i + 1 for i, k in enumerate(m) for _ in range(k)]
    out: list[Word] = []

    def rec(prefix, counts):
        if len(prefix) == len(letters):
            out.append(tuple(prefix))
            return
        for i, k in enumerate(counts):
            if k:
                counts[i] -= 1
                prefix.append(i + 1)
                rec(prefix, counts)
                prefix.pop()
                counts[i] += 1

    rec([], list(m))
    return out


def sigma(p: CPoly) -> NCPoly:
    """Fully symmetrized lift: each monomial becomes the average of its fiber."""
    out: dict[Word, Fraction] = {}
    for m, c in p._terms.items():
        share = c / fiber_size(m)
        for w in _fiber(m):
            out[w] = share
    return NCPoly._raw(p.n, out)


def chs(n: int, d: int) -> CPoly:
    """Complete homogeneous symmetric polynomial h_d(x1..xn)."""
    return CPoly._raw(n, {m: Fraction(1) for m in enumerate_monomials(n, d)})


def nchs(n: int, d: int) -> NCPoly:
    """H_d = sigma(h_d); the coefficient of word w is 1/|fiber of w|."""
    out = {}
    cache: dict[Monomial, Fraction] = {}
    for w in enumerate_words(n, d):
        m = abelianize(w, n)
        c = cache.get(m)
        if c is None:
            c = cache[m] = Fraction(1, fiber_size(m))
        out[w] = c
    return NCPoly._raw(n, out)


def power_sum_nc(n: int, d: int) -> NCPoly:
    """x1^d + ... + xn^d as a noncommutative polynomial."""
    return NCPoly._raw(n, {(j,) * d: Fraction(1) for j in range(1, n + 1)})


def schur_22() -> CPoly:
    """s_(2,2)(x1, x2) = x1^2 x2^2."""
    return CPoly(2, {(2, 2): 1})


@dataclass(frozen=True)
class MatTuple:
    """``n`` symmetric ``k x k`` matrices, exact (Fraction objects) or float."""

    mats: tuple[np.ndarray, ...]
    exact: bool

    def __post_init__(self):
        if not self.mats:
            raise ValueError("empty tuple")
        k = self.mats[0].shape[0]
        for X in self.mats:
            if X.shape != (k, k):
                raise ValueError("matrices must all be square of the same size")
            if self.exact and not (X == X.T).all():
                raise ValueError("exact matrices must be symmetric")

    @property
    def n(self) -> int:
        return len(self.mats)

    @property
    def k(self) -> int:
        return self.mats[0].shape[0]

    @classmethod
    def exact_from(cls, mats: Iterable[Sequence[Sequence]]) -> MatTuple:
        arrs = []
        for M in mats:
            A = np.empty((len(M), len(M)), dtype=object)
            for i, row in enumerate(M):
                for j, x in enumerate(row):
                    A[i, j] = as_rat(x)
            arrs.append(A)
        return cls(tuple(arrs), exact=True)

    @classmethod
    def float_from(cls, mats: Iterable) -> MatTuple:
        return cls(tuple(np.array(M, dtype=float) for M in mats), exact=False)

    def identity(self) -> np.ndarray:
        if self.exact:
            I = np.empty((self.k, self.k), dtype=object)
            for i in range(self.k):
                for j in range(self.k):
                    I[i, j] = Fraction(int(i == j))
            return I
        return np.eye(self.k)

    def zero(self) -> np.ndarray:
        return self.identity() * 0


def eval_nc(p: NCPoly, X: MatTuple) -> np.ndarray:
    """Substitute ``X[j-1]`` for ``xj``; words become matrix products.

    Products sharing a prefix are computed once, so dense homogeneous inputs
    cost one matrix product per distinct prefix.
    """
    if p.n != X.n:
        raise ValueError(f"polynomial has {p.n} variables, tuple has {X.n}")
    I = X.identity()
    out = X.zero()
    cache: dict[Word, np.ndarray] = {(): I}

    def prod(w: Word) -> np.ndarray:
        P = cache.get(w)
        if P is None:
            P = prod(w[:-1]) @ X.mats[w[-1] - 1]
            cache[w] = P
        return P

    for w, c in p.items():
        out = out + prod(w) * (c if X.exact else float(c))
    return out


def eval_c(p: CPoly, x: Sequence) -> object:
    """Evaluate at a point; exact when ``x`` holds rationals, float otherwise."""
    if len(x) != p.n:
        raise ValueError(f"expected {p.n} coordinates, got {len(x)}")
    exact = all(isinstance(v, (int, Fraction)) for v in x)
    total = Fraction(0) if exact else 0.0
    for m, c in p._terms.items():
        term = c if exact else float(c)
        for v, k in zip(x, m):
            term = term * v**k
        total += term
    return total
