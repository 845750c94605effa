"""Permutations of {1..n} in one-line notation."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {1..n}; ``images[i-1]`` is the image of ``i``.

    Composition follows function notation: ``(s * p)(i) == s(p(i))``.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, i: int, j: int, n: int) -> "Permutation":
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], n: int) -> "Permutation":
        images = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Permutation":
        """Parse ``"2,1,3"`` (one-line) or ``"(1 2)(3 4)"`` (cycles; needs ``n``)."""
        text = text.strip()
        if text.startswith("("):
            if n is None:
                raise ValueError("cycle notation needs the degree n")
            cycles = []
            for chunk in text.replace(")", "").split("("):
                if chunk.strip():
                    cycles.append([int(t) for t in chunk.replace(",", " ").split()])
            return cls.from_cycles(cycles, n)
        perm = cls(tuple(int(t) for t in text.replace(" ", ",").split(",") if t))
        if n is not None and perm.n != n:
            raise ValueError(f"permutation has degree {perm.n}, expected {n}")
        return perm

    @classmethod
    def all(cls, n: int) -> Iterator["Permutation"]:
        """All of Σ_n, lexicographic in one-line notation."""
        for images in itertools.permutations(range(1, n + 1)):
            yield cls(images)

    @classmethod
    def random(cls, n: int, rng: random.Random) -> "Permutation":
        images = list(range(1, n + 1))
        rng.shuffle(images)
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.n != self.n:
            raise ValueError("degree mismatch")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def sign(self) -> int:
        seen = [False] * self.n
        parity = 0
        for start in range(self.n):
            if seen[start]:
                continue
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = self.images[j] - 1
                length += 1
            parity += length - 1
        return -1 if parity % 2 else 1

    def extend(self, n: int) -> "Permutation":
        """The same permutation viewed in Σ_n, fixing everything above ``self.n``."""
        return Permutation(self.images + tuple(range(self.n + 1, n + 1)))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(1, self.n + 1):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self(i)
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        return ",".join(map(str, self.images))

    def cycle_str(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def transpositions(n: int) -> list[Permutation]:
    """All transpositions of Σ_n, ordered by (i, j)."""
    return [Permutation.transposition(i, j, n)
            for i in range(1, n + 1) for j in range(i + 1, n + 1)]
