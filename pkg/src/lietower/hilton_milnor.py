"""Lyndon words and the rank formulas for first nonvanishing homotopy groups."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import InvalidInput
from .free_lie import character
from .perms import Permutation

INFINITE = "infinite"


def lyndon_words(n: int, max_len: int) -> list[tuple[int, ...]]:
    """All Lyndon words on letters 1..n of length <= max_len.

    Ordered by length, then lexicographically.  Generated with Duval's
    algorithm, which visits Lyndon words in lexicographic order.
    """
    if n < 1 or max_len < 1:
        raise InvalidInput("n and max_len must be positive")
    out = []
    w = [0]
    while w:
        out.append(tuple(a + 1 for a in w))
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == n - 1:
            w.pop()
        if w:
            w[-1] += 1
    out.sort(key=lambda u: (len(u), u))
    return out


def is_lyndon(word: Sequence[int]) -> bool:
    """Strictly smaller than every proper rotation."""
    word = tuple(word)
    return bool(word) and all(word < word[k:] + word[:k] for k in range(1, len(word)))


def _mobius(k: int) -> int:
    result, p = 1, 2
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            result = -result
        p += 1
    return -result if k > 1 else result


def lyndon_count(n: int, length: int) -> int:
    """Necklace formula (1/L) Σ_{d | L} μ(d) n^{L/d}."""
    total = sum(_mobius(d) * n ** (length // d) for d in range(1, length + 1) if length % d == 0)
    return total // length


def basic_words_all_letters(n: int, max_len: int) -> list[tuple[int, ...]]:
    """Lyndon words using every letter 1..n at least once."""
    if max_len < n:
        return []
    full = set(range(1, n + 1))
    return [w for w in lyndon_words(n, max_len) if set(w) == full]


@dataclass(frozen=True)
class RankProfile:
    """Arity n, connectivity c, ranks of H_{c+1}(X_i), and |π₁| (int or INFINITE)."""

    n: int
    c: int
    leaf_ranks: tuple[int, ...]
    group_order: Union[int, str] = 1

    def __post_init__(self):
        if self.n < 1 or self.c < 0:
            raise InvalidInput("need n >= 1 and c >= 0")
        ranks = tuple(self.leaf_ranks)
        if len(ranks) != self.n or any(r < 1 for r in ranks):
            raise InvalidInput(f"need {self.n} positive leaf ranks, got {ranks}")
        object.__setattr__(self, "leaf_ranks", ranks)
        g = self.group_order
        if g != INFINITE and (not isinstance(g, int) or g < 1):
            raise InvalidInput(f"group order must be a positive integer or {INFINITE!r}")

    @classmethod
    def spheres(cls, n: int, d: int, group_order: Union[int, str] = 1) -> "RankProfile":
        """X_i = S^{d-2}, so c = d - 3 and every leaf rank is 1."""
        if d < 3:
            raise InvalidInput("spheres S^{d-2} need d >= 3")
        return cls(n, d - 3, (1,) * n, group_order)


def _base_rank(p: RankProfile) -> int:
    return math.factorial(p.n - 1) * math.prod(p.leaf_ranks)


def tofib_first_rank(p: RankProfile) -> tuple[int, int]:
    """(n(c+1), (n-1)!·∏r_i) for simply connected X_i."""
    if p.group_order != 1:
        raise InvalidInput("tofib_first_rank needs trivial fundamental group; use the group version")
    return p.n * (p.c + 1), _base_rank(p)


def tofib_first_rank_with_group(p: RankProfile) -> tuple[int, Union[int, str]]:
    """(n(c+1), (n-1)!·∏r_i·g^n); symbolic rank when the group is infinite."""
    degree = p.n * (p.c + 1)
    if p.group_order == INFINITE:
        return degree, f"{_base_rank(p)}*|G|^{p.n}"
    return degree, _base_rank(p) * p.group_order ** p.n


def rank_json(result: tuple[int, Union[int, str]]) -> dict:
    degree, rank = result
    if isinstance(rank, str):
        return {"degree": degree, "rank_expr": rank}
    return {"degree": degree, "rank": rank}


def connectivity_of_J(n: int, c: int) -> int:
    if n < 1 or c < 0:
        raise InvalidInput("need n >= 1 and c >= 0")
    return (n + 1) * (c + 1)


def sphere_case_character(n: int, d: int, sigma: Permutation) -> int:
    """Character of the first nonvanishing group for X_i = S^{d-2}: Lie_{d-2}(n)."""
    if d < 2:
        raise InvalidInput("d must be at least 2")
    return character(n, d - 2, sigma)


def twisted_character(n: int, d: int, sigma: Permutation) -> int:
    """Character of Lie(n) ⊗ sgn^{⊗d}."""
    return sigma.sign() ** d * character(n, 0, sigma)
