"""Decorated Lie elements: Lie(n) ⊗ Z[G^n] and the grasper bracket.

A term is a bracketed word together with a decoration tuple holding one
group element per leaf, listed in increasing leaf-label order.  AS and IHX
act on the word only; decorations ride along with the leaves they sit on.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import GroupClash, InvalidElement, InvalidInput, LabelClash
from .free_lie import (
    Bracket,
    LieElement,
    Word,
    format_word,
    is_multilinear,
    letters,
    normal_form,
    parse_word,
    random_word,
    reduce_by_rewriting,
    relabel_word,
)
from .perms import Permutation


class FiniteGroupTable:
    """Finite group from a 0-based multiplication table with identity 0."""

    def __init__(self, table: Sequence[Sequence[int]], name: str | None = None):
        g = len(table)
        if g == 0 or any(len(row) != g for row in table):
            raise InvalidInput("multiplication table must be a nonempty square")
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.name = name
        if any(not 0 <= x < g for row in self.table for x in row):
            raise InvalidInput("table entries out of range")
        if any(self.table[0][a] != a or self.table[a][0] != a for a in range(g)):
            raise InvalidInput("element 0 is not the identity")
        inverse = []
        for a in range(g):
            inv = [b for b in range(g) if self.table[a][b] == 0]
            if len(inv) != 1 or self.table[inv[0]][a] != 0:
                raise InvalidInput(f"element {a} has no two-sided inverse")
            inverse.append(inv[0])
        self.inverse = tuple(inverse)
        t = self.table
        if any(t[t[a][b]][c] != t[a][t[b][c]] for a in range(g) for b in range(g) for c in range(g)):
            raise InvalidInput("multiplication is not associative")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroupTable) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self) -> str:
        return f"FiniteGroupTable({self.name or 'order ' + str(self.order)})"

    # -- construction helpers ----------------------------------------------

    @classmethod
    def trivial(cls) -> "FiniteGroupTable":
        return cls([[0]], "1")

    @classmethod
    def cyclic(cls, m: int) -> "FiniteGroupTable":
        return cls([[(a + b) % m for b in range(m)] for a in range(m)], f"C{m}")

    @classmethod
    def from_permutations(cls, perms: Sequence[Permutation], name: str | None = None) -> "FiniteGroupTable":
        """Group given by a closed list of permutations; the identity must come first."""
        index = {p: i for i, p in enumerate(perms)}
        try:
            table = [[index[a * b] for b in perms] for a in perms]
        except KeyError as exc:
            raise InvalidInput("permutations are not closed under composition") from exc
        return cls(table, name)

    @classmethod
    def symmetric(cls, k: int) -> "FiniteGroupTable":
        return cls.from_permutations(list(Permutation.all(k)), f"S{k}")

    @classmethod
    def from_json(cls, text: str | dict) -> "FiniteGroupTable":
        doc = json.loads(text) if isinstance(text, str) else text
        table = doc["table"]
        if int(doc["order"]) != len(table):
            raise InvalidInput("declared order does not match the table")
        return cls(table)

    def to_json_obj(self) -> dict:
        return {"order": self.order, "table": [list(r) for r in self.table]}


def small_groups(max_order: int = 6) -> list[FiniteGroupTable]:
    """Cyclic groups up to ``max_order`` plus C2×C2 and S3 when they fit."""
    groups = [FiniteGroupTable.cyclic(m) for m in range(1, max_order + 1)]
    if max_order >= 4:
        klein = [[a ^ b for b in range(4)] for a in range(4)]
        groups.append(FiniteGroupTable(klein, "C2xC2"))
    if max_order >= 6:
        groups.append(FiniteGroupTable.symmetric(3))
    return groups


@dataclass(frozen=True, eq=False)
class GroupRingElement:
    group: FiniteGroupTable
    coeffs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(g): int(c) for g, c in self.coeffs.items() if c}
        if any(not 0 <= g < self.group.order for g in clean):
            raise InvalidInput("group element out of range")
        object.__setattr__(self, "coeffs", clean)

    def _check(self, other: "GroupRingElement"):
        if self.group != other.group:
            raise GroupClash("group ring elements over different groups")

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        out = defaultdict(int, self.coeffs)
        for g, c in other.coeffs.items():
            out[g] += c
        return GroupRingElement(self.group, out)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.group, {g: c * other for g, c in self.coeffs.items()})
        self._check(other)
        out = defaultdict(int)
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                out[self.group.mul(a, b)] += x * y
        return GroupRingElement(self.group, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupRingElement) and self.group == other.group and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.group, frozenset(self.coeffs.items())))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*g{g}" for g, c in sorted(self.coeffs.items()))


Term = tuple[Word, tuple[int, ...]]


@dataclass(frozen=True, eq=False)
class DecoratedLieElement:
    """Integer combination of (word, decoration) pairs on a common label set."""

    labels: tuple[int, ...]
    group: FiniteGroupTable
    terms: Mapping[Term, int] = field(default_factory=dict)
    grading: int = 0

    def __post_init__(self):
        labels = tuple(sorted(self.labels))
        if not labels or len(set(labels)) != len(labels):
            raise InvalidElement(f"bad label set {self.labels}")
        clean = {}
        for (w, dec), c in self.terms.items():
            dec = tuple(int(g) for g in dec)
            if not is_multilinear(w, labels):
                raise InvalidElement(f"{format_word(w)} is not multilinear on {labels}")
            if len(dec) != len(labels) or any(not 0 <= g < self.group.order for g in dec):
                raise InvalidElement(f"decoration {dec} does not fit {len(labels)} leaves in a group of order {self.group.order}")
            if c:
                clean[(w, dec)] = clean.get((w, dec), 0) + int(c)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v})

    @classmethod
    def single(cls, w: Word, decoration: Sequence[int], group: FiniteGroupTable,
               coeff: int = 1, grading: int = 0) -> "DecoratedLieElement":
        return cls(tuple(sorted(letters(w))), group, {(w, tuple(decoration)): coeff}, grading)

    @classmethod
    def zero(cls, labels: Iterable[int], group: FiniteGroupTable, grading: int = 0) -> "DecoratedLieElement":
        return cls(tuple(labels), group, {}, grading)

    @classmethod
    def parse(cls, text: str, group: FiniteGroupTable, grading: int = 0,
              labels: Iterable[int] | None = None) -> "DecoratedLieElement":
        """``2*[x1,x2]@(g0,g1) + -1*[x2,x1]@(g1,g0)``; ``0`` needs ``labels``."""
        text = text.strip()
        terms: dict[Term, int] = defaultdict(int)
        if text != "0":
            for chunk in text.split("+"):
                m = re.fullmatch(r"\s*(?:(-?\d+)\s*\*)?\s*(.+?)\s*@\s*\(([^)]*)\)\s*", chunk)
                if not m:
                    raise InvalidElement(f"cannot parse decorated term {chunk.strip()!r}")
                coeff = int(m.group(1)) if m.group(1) else 1
                w = parse_word(m.group(2))
                dec = tuple(int(t.strip().lstrip("g")) for t in m.group(3).split(",") if t.strip())
                terms[(w, dec)] += coeff
        if labels is None:
            if not terms:
                raise InvalidElement("cannot infer labels of the zero element")
            labels = sorted(letters(next(iter(terms))[0]))
        return cls(tuple(labels), group, terms, grading)

    @property
    def degree(self) -> int:
        return len(self.labels)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "DecoratedLieElement"):
        if self.group != other.group:
            raise GroupClash("decorations live in different groups")
        if self.labels != other.labels or self.grading != other.grading:
            raise InvalidElement("elements live on different label sets or gradings")

    def __add__(self, other: "DecoratedLieElement") -> "DecoratedLieElement":
        self._check(other)
        out = defaultdict(int, self.terms)
        for k, c in other.terms.items():
            out[k] += c
        return DecoratedLieElement(self.labels, self.group, out, self.grading)

    def __neg__(self) -> "DecoratedLieElement":
        return self * -1

    def __sub__(self, other: "DecoratedLieElement") -> "DecoratedLieElement":
        return self + (-other)

    def __mul__(self, k: int) -> "DecoratedLieElement":
        return DecoratedLieElement(self.labels, self.group, {t: k * c for t, c in self.terms.items()}, self.grading)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (isinstance(other, DecoratedLieElement) and self.labels == other.labels
                and self.group == other.group and self.grading == other.grading and self.terms == other.terms)

    def __hash__(self):
        return hash((self.labels, self.group, self.grading, frozenset(self.terms.items())))

    def word_part(self) -> LieElement:
        """Forget decorations."""
        out: dict[Word, int] = defaultdict(int)
        for (w, _), c in self.terms.items():
            out[w] += c
        return LieElement(self.labels, out, self.grading)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda t: (letters(t[0][0]), format_word(t[0][0]), t[0][1]))
        return " + ".join(f"{c}*{format_word(w)}@({','.join(f'g{g}' for g in dec)})" for (w, dec), c in items)

    def __repr__(self) -> str:
        return f"DecoratedLieElement({self})"


def decorated_reduce(e: DecoratedLieElement, D: int | None = None) -> DecoratedLieElement:
    """Right-normed form of the word factor; decorations stay on their leaves."""
    D = e.grading if D is None else D
    out: dict[Term, int] = defaultdict(int)
    for (w, dec), c in e.terms.items():
        for nw, nc in normal_form(w, D):
            out[(nw, dec)] += c * nc
    return DecoratedLieElement(e.labels, e.group, out, D)


def decorated_reduce_by_rewriting(e: DecoratedLieElement, rng: random.Random | None = None) -> DecoratedLieElement:
    """Slow reduction through random local rewrites, grouped by decoration."""
    by_dec: dict[tuple[int, ...], dict[Word, int]] = defaultdict(dict)
    for (w, dec), c in e.terms.items():
        by_dec[dec][w] = by_dec[dec].get(w, 0) + c
    out: dict[Term, int] = {}
    for dec, words in by_dec.items():
        red = reduce_by_rewriting(LieElement(e.labels, words, e.grading), rng)
        for w, c in red.terms.items():
            out[(w, dec)] = c
    return DecoratedLieElement(e.labels, e.group, out, e.grading)


def _merge_decorations(l1, d1, l2, d2) -> tuple[int, ...]:
    by_leaf = dict(zip(l1, d1))
    by_leaf.update(zip(l2, d2))
    return tuple(by_leaf[i] for i in sorted(by_leaf))


def grasper_bracket_unreduced(e1: DecoratedLieElement, e2: DecoratedLieElement) -> DecoratedLieElement:
    if e1.group != e2.group:
        raise GroupClash("grasper classes decorated by different groups")
    if set(e1.labels) & set(e2.labels):
        raise LabelClash(f"label sets {e1.labels} and {e2.labels} overlap")
    if e1.grading != e2.grading:
        raise InvalidElement("grading mismatch")
    out: dict[Term, int] = defaultdict(int)
    for (w1, d1), c1 in e1.terms.items():
        for (w2, d2), c2 in e2.terms.items():
            out[(Bracket(w1, w2), _merge_decorations(e1.labels, d1, e2.labels, d2))] += c1 * c2
    return DecoratedLieElement(e1.labels + e2.labels, e1.group, out, e1.grading)


def grasper_bracket(e1: DecoratedLieElement, e2: DecoratedLieElement) -> DecoratedLieElement:
    """[(w1, g1), (w2, g2)] = ([w1, w2], g1 ∪ g2), then reduced."""
    return decorated_reduce(grasper_bracket_unreduced(e1, e2))


def decorated_act(sigma: Permutation, e: DecoratedLieElement) -> DecoratedLieElement:
    """Leaf i becomes leaf σ(i), carrying its decoration along."""
    if e.labels != tuple(range(1, sigma.n + 1)):
        raise InvalidElement(f"σ ∈ Σ_{sigma.n} cannot act on labels {e.labels}")
    mapping = {i: sigma(i) for i in e.labels}
    out: dict[Term, int] = defaultdict(int)
    for (w, dec), c in e.terms.items():
        new_dec = [0] * len(dec)
        for i, g in zip(e.labels, dec):
            new_dec[mapping[i] - 1] = g
        out[(relabel_word(w, mapping), tuple(new_dec))] += c
    return decorated_reduce(DecoratedLieElement(e.labels, e.group, out, e.grading))


def decorated_rank(n: int, D: int, group_order: int) -> int:
    """Free rank (n-1)!·g^n of Lie_D(n) ⊗ Z[G^n]; independent of D."""
    if n < 1 or group_order < 1 or D < 0:
        raise InvalidInput("need n >= 1, D >= 0 and a finite group")
    return math.factorial(n - 1) * group_order ** n


def decorated_basis(n: int, group: FiniteGroupTable) -> list[Term]:
    """Pairs (w_σ, decoration), σ ∈ Σ_{n-1} lexicographic, decorations lexicographic."""
    from .free_lie import lie_basis

    decs = list(itertools.product(range(group.order), repeat=n))
    return [(w, d) for w in lie_basis(n) for d in decs]


def decorated_coordinates(e: DecoratedLieElement) -> dict[Term, int]:
    """Coefficients of the reduced element on :func:`decorated_basis`."""
    return dict(decorated_reduce(e).terms)


def random_decorated(labels: Sequence[int], group: FiniteGroupTable, rng: random.Random,
                     n_terms: int = 3, grading: int = 0) -> DecoratedLieElement:
    terms: dict[Term, int] = defaultdict(int)
    for _ in range(n_terms):
        w = random_word(labels, rng)
        dec = tuple(rng.randrange(group.order) for _ in labels)
        terms[(w, dec)] += rng.choice([-3, -2, -1, 1, 2, 3])
    return DecoratedLieElement(tuple(labels), group, terms, grading)
