"""The poset Π_n of proper set partitions and its nerve.

Chains are stored fine -> coarse (``b_i`` refines ``b_{i+1}``); that order is
the orientation of each simplex.  Σ_n acts by relabelling, which is a poset
automorphism, so no orientation signs ever appear.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import InvalidElement, InvalidInput
from .free_lie import Bracket, Word, is_multilinear, letters
from .perms import Permutation


@dataclass(frozen=True, order=True)
class Partition:
    """Set partition in canonical form: blocks sorted by minimum, elements sorted."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        flat = [i for b in blocks for i in b]
        if any(not b for b in blocks) or len(flat) != len(set(flat)):
            raise InvalidInput(f"blocks are not disjoint and nonempty: {self.blocks}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """``"12|3"`` or, with multi-digit elements, ``"1,12|2,3"``."""
        parts = text.strip().split("|")
        if "," in text:
            blocks = [[int(t) for t in p.split(",") if t.strip()] for p in parts]
        else:
            blocks = [[int(ch) for ch in p.strip()] for p in parts]
        return cls(tuple(tuple(b) for b in blocks))

    @property
    def ground(self) -> frozenset[int]:
        return frozenset(i for b in self.blocks for i in b)

    @property
    def size(self) -> int:
        return len(self.blocks)

    def refines(self, other: "Partition") -> bool:
        """Every block of ``self`` lies inside a block of ``other`` (non-strict)."""
        owner = {i: k for k, b in enumerate(other.blocks) for i in b}
        return all(len({owner[i] for i in b}) == 1 for b in self.blocks)

    def relabel(self, sigma: Permutation) -> "Partition":
        return Partition(tuple(tuple(sigma(i) for i in b) for b in self.blocks))

    def __str__(self) -> str:
        wide = max((i for b in self.blocks for i in b), default=0) > 9
        sep = "," if wide else ""
        return "|".join(sep.join(map(str, b)) for b in self.blocks)


@dataclass(frozen=True)
class PartitionChain:
    partitions: tuple[Partition, ...]

    def __post_init__(self):
        for a, b in zip(self.partitions, self.partitions[1:]):
            if a == b or not a.refines(b):
                raise InvalidInput(f"{a} does not strictly refine {b}")

    @property
    def dim(self) -> int:
        return len(self.partitions) - 1

    def __str__(self) -> str:
        return " < ".join(map(str, self.partitions))

    @classmethod
    def parse(cls, text: str) -> "PartitionChain":
        return cls(tuple(Partition.parse(t) for t in text.split("<")))


def _set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in _set_partitions(rest):
        yield [[first]] + smaller
        for k in range(len(smaller)):
            yield smaller[:k] + [[first] + smaller[k]] + smaller[k + 1:]


def all_set_partitions(n: int) -> list[Partition]:
    return sorted(Partition(tuple(tuple(b) for b in p)) for p in _set_partitions(list(range(1, n + 1))))


def build_poset(n: int) -> list[Partition]:
    """Proper partitions of {1..n}, canonically sorted; Bell(n) - 2 of them."""
    if n < 2:
        raise InvalidInput("Π_n needs n >= 2")
    return [p for p in all_set_partitions(n) if 1 < p.size < n]


class NerveComplex:
    """Non-degenerate simplices of N Π_n.

    ``simplices[k]`` is a sorted list of index tuples into ``poset``; the
    tuple order is fine -> coarse.
    """

    def __init__(self, n: int, poset: list[Partition], simplices: list[list[tuple[int, ...]]]):
        self.n = n
        self.poset = poset
        self.simplices = simplices
        self._index = [{s: i for i, s in enumerate(level)} for level in simplices]
        self._pindex = {p: i for i, p in enumerate(poset)}

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def counts(self) -> list[int]:
        return [len(level) for level in self.simplices]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.counts()))

    def chain(self, k: int, i: int) -> PartitionChain:
        return PartitionChain(tuple(self.poset[j] for j in self.simplices[k][i]))

    def chains(self, k: int) -> list[PartitionChain]:
        return [self.chain(k, i) for i in range(len(self.simplices[k]))]

    def index_of(self, chain: PartitionChain) -> tuple[int, int]:
        """(dimension, position) of a stored chain."""
        key = tuple(self._pindex[p] for p in chain.partitions)
        k = len(key) - 1
        return k, self._index[k][key]

    def act_indices(self, sigma: Permutation, k: int) -> list[int]:
        """Image position of every k-simplex under σ."""
        moved = [self._pindex[p.relabel(sigma)] for p in self.poset]
        index = self._index[k]
        return [index[tuple(moved[j] for j in s)] for s in self.simplices[k]]

    def boundary_columns(self, k: int) -> list[dict[int, int]]:
        """Columns of ∂_k : C_k -> C_{k-1}, face i weighted (-1)^i."""
        index = self._index[k - 1]
        cols = []
        for s in self.simplices[k]:
            col = {}
            for i in range(len(s)):
                col[index[s[:i] + s[i + 1:]]] = -1 if i % 2 else 1
            cols.append(col)
        return cols


@functools.lru_cache(maxsize=8)
def build_nerve(n: int) -> NerveComplex:
    """All strict refinement chains of Π_n, graded by length (top dimension n-3)."""
    if n < 3:
        raise InvalidInput("the nerve needs n >= 3 (Π_2 is empty)")
    poset = build_poset(n)
    # block bitmasks make the refinement test cheap for n ~ 7
    masks = [[sum(1 << i for i in b) for b in p.blocks] for p in poset]

    def below(a, b):
        return a != b and all(any(x & ~y == 0 for y in masks[b]) for x in masks[a])

    up = [[b for b in range(len(poset)) if below(a, b)] for a in range(len(poset))]
    simplices: list[list[tuple[int, ...]]] = [[(a,) for a in range(len(poset))]]
    while True:
        nxt = [s + (b,) for s in simplices[-1] for b in up[s[-1]]]
        if not nxt:
            break
        simplices.append(sorted(nxt))
    return NerveComplex(n, poset, simplices)


def simplicial_action(sigma: Permutation, c: PartitionChain) -> PartitionChain:
    """Blockwise relabelling; chain order is preserved."""
    return PartitionChain(tuple(p.relabel(sigma) for p in c.partitions))


def _vertex_sets(w: Word) -> list[tuple[int, frozenset[int]]]:
    """(depth, leaf set) of every internal vertex of the binary tree of ``w``."""
    out = []

    def walk(node, depth):
        if isinstance(node, int):
            return
        out.append((depth, frozenset(letters(node))))
        walk(node.left, depth + 1)
        walk(node.right, depth + 1)

    walk(w, 0)
    return out


def top_simplex_of_tree(w: Word, n: int) -> PartitionChain:
    """Cut the Lie tree of ``w`` level by level into an (n-3)-chain.

    Internal vertices are merged deepest first, ties broken by smallest leaf
    set (sorted).  For right-normed words the order is forced.
    """
    if not is_multilinear(w, range(1, n + 1)):
        raise InvalidElement("word is not multilinear on 1..n")
    if n < 3:
        raise InvalidInput("Π_n has no simplices for n < 3")
    verts = sorted(_vertex_sets(w), key=lambda t: (-t[0], sorted(t[1])))
    blocks = [frozenset([i]) for i in range(1, n + 1)]
    chain = []
    for _, leafset in verts[:-1]:  # the root gives the trivial partition
        blocks = [b for b in blocks if not b <= leafset] + [leafset]
        chain.append(Partition(tuple(tuple(b) for b in blocks)))
    return PartitionChain(tuple(chain))


def chain_complex(nerve: NerveComplex, augmented: bool = True):
    """Simplicial chain complex of the nerve; augmented gives reduced homology."""
    from .homology import IntegerChainComplex, IntegerMatrix

    dims = {k: len(level) for k, level in enumerate(nerve.simplices)}
    bnd = {k: IntegerMatrix(dims[k - 1], dims[k], nerve.boundary_columns(k)) for k in range(1, len(dims))}
    if augmented:
        dims[-1] = 1
        bnd[0] = IntegerMatrix(1, dims[0], [{0: 1} for _ in range(dims[0])])
    return IntegerChainComplex(dims, bnd, augmented=augmented)


def partition_complex_chains(n: int):
    """Augmented chains of |Π_n|; for n = 2 the empty complex, so H̃_{-1} = Z."""
    from .homology import IntegerChainComplex

    if n == 2:
        return IntegerChainComplex({-1: 1}, augmented=True)
    return chain_complex(build_nerve(n), augmented=True)
