"""Words, monomials and the counting functions built on them.

A word of degree ``d`` in ``n`` letters is a tuple of 1-based letters, e.g.
``(1, 2, 1)`` for x1 x2 x1.  A monomial is a tuple of ``n`` exponents, e.g.
``(2, 1)`` for x1^2 x2.  Both are plain tuples so they hash and compare
lexicographically for free.
"""
from __future__ import annotations

import os
from itertools import product
from math import comb

Word = tuple[int, ...]
Monomial = tuple[int, ...]

DEFAULT_MAX_DIM = 8192
_ENV_CAP = "NCHS_MAX_DIM"
_cap_override: int | None = None


class DimensionCapError(ValueError):
    """Raised when an index set would exceed the configured matrix-dimension cap."""


def max_dim() -> int:
    if _cap_override is not None:
        return _cap_override
    env = os.environ.get(_ENV_CAP)
    if env:
        return int(env)
    return DEFAULT_MAX_DIM


def set_max_dim(cap: int | None) -> None:
    """Override the dimension cap for this process (``None`` restores env/default)."""
    global _cap_override
    if cap is not None and cap < 1:
        raise ValueError("cap must be positive")
    _cap_override = cap


def _check_cap(size: int, what: str) -> None:
    cap = max_dim()
    if size > cap:
        raise DimensionCapError(f"{what} has {size} elements, exceeding cap {cap}")


def _check_nd(n: int, d: int) -> None:
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if d < 0:
        raise ValueError(f"need d >= 0, got {d}")


def enumerate_words(n: int, d: int) -> list[Word]:
    """All ``n**d`` words of degree ``d`` in lexicographic order (x1 < x2 < ...)."""
    _check_nd(n, d)
    _check_cap(n**d, f"word basis ({n} letters, degree {d})")
    return list(product(range(1, n + 1), repeat=d))


def enumerate_monomials(n: int, d: int) -> list[Monomial]:
    """All degree-``d`` monomials in ``n`` variables, lexicographically increasing.

    Lexicographic order on exponent vectors is taken on the sorted letter
    sequence, so x1^2 < x1 x2 < x2^2; this is the order induced by the
    nondecreasing words ``i1 <= ... <= id`` used to write ``h_d``.
    """
    _check_nd(n, d)
    _check_cap(comb(n - 1 + d, d), f"monomial basis ({n} variables, degree {d})")
    out = []
    for letters in _nondecreasing(n, d, 1):
        out.append(abelianize(letters, n))
    return out


def _nondecreasing(n: int, d: int, start: int):
    if d == 0:
        yield ()
        return
    for i in range(start, n + 1):
        for rest in _nondecreasing(n, d - 1, i):
            yield (i,) + rest


def monomial_letters(m: Monomial) -> Word:
    """The nondecreasing word whose abelianization is ``m``."""
    return tuple(i + 1 for i, k in enumerate(m) for _ in range(k))


def abelianize(w: Word, n: int) -> Monomial:
    """Forget letter order: exponent ``i`` counts occurrences of letter ``i+1``."""
    exps = [0] * n
    for letter in w:
        if not 1 <= letter <= n:
            raise ValueError(f"letter {letter} outside 1..{n}")
        exps[letter - 1] += 1
    return tuple(exps)


def fiber_size(m: Monomial) -> int:
    """Number of words abelianizing to ``m``: the multinomial d!/(k1!...kn!)."""
    total = 0
    result = 1
    for k in m:
        if k < 0:
            raise ValueError("negative exponent")
        # incremental product of binomials avoids large intermediate factorials
        total += k
        result *= comb(total, k)
    return result


def gen_binomial(r: int, k: int) -> int:
    """Generalized binomial r(r-1)...(r-k+1)/k! for any integer ``r`` and ``k >= 0``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if r >= 0:
        return comb(r, k)
    # reflection: binom(r, k) = (-1)^k binom(k - r - 1, k)
    return (-1) ** k * comb(k - r - 1, k)


def falling_factorial(r: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= r - i
    return out


def word_index(w: Word, n: int) -> int:
    """Position of ``w`` in :func:`enumerate_words` (base-``n`` encoding, 0-based digits)."""
    idx = 0
    for letter in w:
        if not 1 <= letter <= n:
            raise ValueError(f"letter {letter} outside 1..{n}")
        idx = idx * n + (letter - 1)
    return idx


def index_word(i: int, n: int, d: int) -> Word:
    if not 0 <= i < n**d:
        raise IndexError(f"index {i} out of range for {n}^{d} words")
    letters = []
    for _ in range(d):
        i, r = divmod(i, n)
        letters.append(r + 1)
    return tuple(reversed(letters))


def reverse(w: Word) -> Word:
    return tuple(reversed(w))


def word_str(w: Word) -> str:
    """Render ``(1, 1, 2)`` as ``x1^2 x2``; the empty word renders as ``1``."""
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        run = j - i
        parts.append(f"x{w[i]}" if run == 1 else f"x{w[i]}^{run}")
        i = j
    return " ".join(parts)


def monomial_str(m: Monomial) -> str:
    parts = [f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(m) if k]
    return " ".join(parts) if parts else "1"

