"""Free Lie rings: bracketed words, reduction to the right-normed basis, Σ_n-action.

Words are stored as plain Python values: a letter ``x^i`` is the int ``i``
and a bracket is a :class:`Bracket` pair.  Tuples hash in C, which matters
because reduction is memoised on words.

The normal form of a multilinear word is the right-normed word
``[x^a1,[x^a2,...,[x^a(k-1), x^max]]]`` whose innermost right letter is the
largest label.  Grading: every letter has degree ``D`` and brackets follow
the Koszul sign rule.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Union

import numpy as np

from .errors import InvalidElement, LabelClash
from .perms import Permutation


class Bracket(NamedTuple):
    left: "Word"
    right: "Word"


Letter = int
Word = Union[int, Bracket]


# ----------------------------------------------------------------------------
# word helpers

@functools.lru_cache(maxsize=None)
def letters(w: Word) -> tuple[int, ...]:
    """Letters of ``w`` read left to right."""
    if isinstance(w, int):
        return (w,)
    return letters(w.left) + letters(w.right)


@functools.lru_cache(maxsize=None)
def max_letter(w: Word) -> int:
    if isinstance(w, int):
        return w
    return max(max_letter(w.left), max_letter(w.right))


def word_length(w: Word) -> int:
    return len(letters(w))


def is_multilinear(w: Word, labels: Iterable[int]) -> bool:
    lets = letters(w)
    return len(set(lets)) == len(lets) and set(lets) == set(labels)


def right_normed(seq: Iterable[int]) -> Word:
    """``(a1,...,ak)`` -> ``[x^a1,[x^a2,...,[x^a(k-1),x^ak]]]``."""
    seq = list(seq)
    if not seq:
        raise InvalidElement("empty word")
    w: Word = seq[-1]
    for a in reversed(seq[:-1]):
        w = Bracket(a, w)
    return w


def is_normal(w: Word) -> bool:
    """Right-normed with the largest letter innermost."""
    while isinstance(w, Bracket):
        if not isinstance(w.left, int) or w.left > max_letter(w.right):
            return False
        w = w.right
    return True


def relabel_word(w: Word, mapping: Mapping[int, int]) -> Word:
    if isinstance(w, int):
        return mapping[w]
    return Bracket(relabel_word(w.left, mapping), relabel_word(w.right, mapping))


def format_word(w: Word) -> str:
    if isinstance(w, int):
        return f"x{w}"
    return f"[{format_word(w.left)},{format_word(w.right)}]"


_TOKEN = re.compile(r"\s*(x\d+|\[|\]|,|\*|[+-]?\d+|[+-])")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise InvalidElement(f"cannot parse {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return tokens


def _parse_word(tokens: list[str], i: int) -> tuple[Word, int]:
    tok = tokens[i] if i < len(tokens) else None
    if tok is not None and tok.startswith("x"):
        idx = int(tok[1:])
        if idx < 1:
            raise InvalidElement("letters are x1, x2, ...")
        return idx, i + 1
    if tok == "[":
        left, i = _parse_word(tokens, i + 1)
        if i >= len(tokens) or tokens[i] != ",":
            raise InvalidElement("expected ',' in bracket")
        right, i = _parse_word(tokens, i + 1)
        if i >= len(tokens) or tokens[i] != "]":
            raise InvalidElement("expected ']'")
        return Bracket(left, right), i + 1
    raise InvalidElement(f"unexpected token {tok!r}")


def parse_word(text: str) -> Word:
    tokens = _tokenize(text)
    w, i = _parse_word(tokens, 0)
    if i != len(tokens):
        raise InvalidElement(f"trailing input in {text!r}")
    return w


def parse_terms(text: str) -> list[tuple[int, Word]]:
    """Parse ``2*[x1,x2] + -1*[x2,x1]`` into ``[(coeff, word), ...]``."""
    tokens = _tokenize(text)
    if tokens == ["0"]:
        return []
    terms = []
    i = 0
    sign = 1
    while i < len(tokens):
        tok = tokens[i]
        if tok in "+-" and len(tok) == 1:
            sign = sign * (-1 if tok == "-" else 1)
            i += 1
            continue
        coeff = 1
        if re.fullmatch(r"[+-]?\d+", tok):
            coeff = int(tok)
            i += 1
            if i < len(tokens) and tokens[i] == "*":
                i += 1
            elif i == len(tokens):
                raise InvalidElement("a bare integer is not a Lie element")
        w, i = _parse_word(tokens, i)
        terms.append((sign * coeff, w))
        sign = 1
        if i < len(tokens) and tokens[i] not in ("+", "-") and not re.fullmatch(r"[+-]\d+", tokens[i]):
            raise InvalidElement(f"expected '+' between terms, got {tokens[i]!r}")
    return terms


# ----------------------------------------------------------------------------
# graded signs and the rewriting core

def koszul(D: int, len_a: int, len_b: int) -> int:
    """(-1)^{|a||b|} with |w| = D * len(w)."""
    return -1 if (D * len_a * D * len_b) % 2 else 1


@functools.lru_cache(maxsize=None)
def _bracket_normal(u: Word, v: Word, D: int) -> tuple[tuple[Word, int], ...]:
    """Normal form of [u, v] for normal words u, v on disjoint letters."""
    lu, lv = word_length(u), word_length(v)
    if max_letter(u) > max_letter(v):
        # [u,v] = -(-1)^{|u||v|} [v,u]
        eps = -koszul(D, lu, lv)
        return tuple((w, eps * c) for w, c in _bracket_normal(v, u, D))
    if isinstance(u, int):
        return ((Bracket(u, v), 1),)
    # [[a,u'],v] = [a,[u',v]] - (-1)^{|a||u'|} [u',[a,v]]
    a, rest = u.left, u.right
    out: dict[Word, int] = defaultdict(int)
    for w, c in _bracket_normal(rest, v, D):
        out[Bracket(a, w)] += c
    sign = koszul(D, 1, word_length(rest))
    for w, c in _bracket_normal(rest, Bracket(a, v), D):
        out[w] -= sign * c
    return tuple((w, c) for w, c in out.items() if c)


@functools.lru_cache(maxsize=None)
def normal_form(w: Word, D: int = 0) -> tuple[tuple[Word, int], ...]:
    """Expansion of a single word in the right-normed basis of its letters."""
    if isinstance(w, int):
        return ((w, 1),)
    out: dict[Word, int] = defaultdict(int)
    for lw, lc in normal_form(w.left, D):
        for rw, rc in normal_form(w.right, D):
            for nw, nc in _bracket_normal(lw, rw, D):
                out[nw] += lc * rc * nc
    return tuple((k, c) for k, c in out.items() if c)


def _rewrite_at(w: Word, D: int) -> list[tuple[int, Word]] | None:
    """One local rewrite at the root of ``w``, or None if the root is not a redex."""
    if isinstance(w, int):
        return None
    l, r = w
    if max_letter(l) > max_letter(r):
        return [(-koszul(D, word_length(l), word_length(r)), Bracket(r, l))]
    if isinstance(l, Bracket):
        p, q = l
        return [(1, Bracket(p, Bracket(q, r))),
                (-koszul(D, word_length(p), word_length(q)), Bracket(q, Bracket(p, r)))]
    return None


def _redex_paths(w: Word, path=()) -> list[tuple[int, ...]]:
    if isinstance(w, int):
        return []
    out = [path] if _rewrite_at(w, 0) is not None else []
    out += _redex_paths(w.left, path + (0,))
    out += _redex_paths(w.right, path + (1,))
    return out


def _replace(w: Word, path: tuple[int, ...], D: int) -> list[tuple[int, Word]]:
    if not path:
        return _rewrite_at(w, D)
    if path[0] == 0:
        return [(c, Bracket(s, w.right)) for c, s in _replace(w.left, path[1:], D)]
    return [(c, Bracket(w.left, s)) for c, s in _replace(w.right, path[1:], D)]


# ----------------------------------------------------------------------------
# elements

@dataclass(frozen=True, eq=False)
class LieElement:
    """Integer combination of bracketed words, each multilinear on ``labels``.

    ``grading`` is the letter degree D (0 for the ungraded Lie ring).
    """

    labels: tuple[int, ...]
    terms: Mapping[Word, int] = field(default_factory=dict)
    grading: int = 0

    def __post_init__(self):
        labels = tuple(sorted(self.labels))
        if len(set(labels)) != len(labels) or not labels or labels[0] < 1:
            raise InvalidElement(f"bad label set {self.labels}")
        clean = {}
        for w, c in self.terms.items():
            if not is_multilinear(w, labels):
                raise InvalidElement(f"{format_word(w)} is not multilinear on {labels}")
            if c:
                clean[w] = int(c)
        if self.grading < 0:
            raise InvalidElement("grading must be nonnegative")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def from_word(cls, w: Word, grading: int = 0, coeff: int = 1) -> "LieElement":
        return cls(tuple(sorted(letters(w))), {w: coeff}, grading)

    @classmethod
    def zero(cls, labels: Iterable[int], grading: int = 0) -> "LieElement":
        return cls(tuple(labels), {}, grading)

    @classmethod
    def parse(cls, text: str, grading: int = 0, labels: Iterable[int] | None = None) -> "LieElement":
        terms = parse_terms(text)
        if labels is None:
            if not terms:
                raise InvalidElement("cannot infer labels of the zero element")
            labels = sorted(letters(terms[0][1]))
        out: dict[Word, int] = defaultdict(int)
        for c, w in terms:
            out[w] += c
        return cls(tuple(labels), out, grading)

    @property
    def degree(self) -> int:
        return len(self.labels)

    def is_zero(self) -> bool:
        return not self.terms

    def _check_compatible(self, other: "LieElement"):
        if self.labels != other.labels or self.grading != other.grading:
            raise InvalidElement("elements live in different Lie(n) / gradings")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check_compatible(other)
        out = defaultdict(int, self.terms)
        for w, c in other.terms.items():
            out[w] += c
        return LieElement(self.labels, out, self.grading)

    def __neg__(self) -> "LieElement":
        return LieElement(self.labels, {w: -c for w, c in self.terms.items()}, self.grading)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __mul__(self, k: int) -> "LieElement":
        return LieElement(self.labels, {w: k * c for w, c in self.terms.items()}, self.grading)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return (self.labels == other.labels and self.grading == other.grading
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.labels, self.grading, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[Word, int]]:
        return sorted(self.terms.items(), key=lambda t: (letters(t[0]), format_word(t[0])))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{format_word(w)}" for w, c in self.sorted_terms())

    def __repr__(self) -> str:
        return f"LieElement({self}, D={self.grading})"


def reduce(e: LieElement) -> LieElement:
    """Rewrite ``e`` into the right-normed basis modulo (graded) AS and Jacobi."""
    out: dict[Word, int] = defaultdict(int)
    for w, c in e.terms.items():
        for nw, nc in normal_form(w, e.grading):
            out[nw] += c * nc
    return LieElement(e.labels, out, e.grading)


def reduce_by_rewriting(e: LieElement, rng: random.Random | None = None) -> LieElement:
    """Reduce by single local rewrites applied at randomly chosen redexes.

    Slow; used to check that the normal form does not depend on rewrite order.
    """
    rng = rng or random.Random(0)
    current: dict[Word, int] = {w: c for w, c in e.terms.items() if c}
    while True:
        pending = [w for w in current if not is_normal(w)]
        if not pending:
            return LieElement(e.labels, current, e.grading)
        w = rng.choice(sorted(pending, key=format_word))
        path = rng.choice(_redex_paths(w))
        c = current.pop(w)
        for k, nw in _replace(w, path, e.grading):
            current[nw] = current.get(nw, 0) + c * k
            if current[nw] == 0:
                del current[nw]


def bracket(e1: LieElement, e2: LieElement) -> LieElement:
    """Unreduced bilinear bracket on disjoint label sets."""
    if set(e1.labels) & set(e2.labels):
        raise LabelClash(f"label sets {e1.labels} and {e2.labels} overlap")
    if e1.grading != e2.grading:
        raise InvalidElement("grading mismatch")
    out: dict[Word, int] = defaultdict(int)
    for w1, c1 in e1.terms.items():
        for w2, c2 in e2.terms.items():
            out[Bracket(w1, w2)] += c1 * c2
    return LieElement(e1.labels + e2.labels, out, e1.grading)


def graft(e1: LieElement, e2: LieElement) -> LieElement:
    """Grafting of Lie trees: the reduced bracket Lie(S1) x Lie(S2) -> Lie(S1 ⊔ S2)."""
    return reduce(bracket(e1, e2))


# ----------------------------------------------------------------------------
# basis, action, characters

@functools.lru_cache(maxsize=None)
def basis_for(labels: tuple[int, ...]) -> tuple[Word, ...]:
    labels = tuple(sorted(labels))
    head, last = labels[:-1], labels[-1]
    return tuple(right_normed(p + (last,)) for p in itertools.permutations(head))


def lie_basis(n: int) -> list[Word]:
    """The (n-1)! right-normed words w_σ, σ ∈ Σ_{n-1} in lexicographic order."""
    if n < 1:
        raise InvalidElement("n must be positive")
    return list(basis_for(tuple(range(1, n + 1))))


@functools.lru_cache(maxsize=None)
def _basis_index(labels: tuple[int, ...]) -> dict[Word, int]:
    return {w: i for i, w in enumerate(basis_for(labels))}


def coordinates(e: LieElement) -> list[int]:
    """Coordinates of ``reduce(e)`` in the right-normed basis."""
    index = _basis_index(e.labels)
    vec = [0] * len(index)
    for w, c in reduce(e).terms.items():
        vec[index[w]] += c
    return vec


def act(sigma: Permutation, e: LieElement) -> LieElement:
    """Relabel ``x^i -> x^σ(i)`` and reduce."""
    if e.labels != tuple(range(1, sigma.n + 1)):
        raise InvalidElement(f"σ ∈ Σ_{sigma.n} cannot act on labels {e.labels}")
    mapping = {i: sigma(i) for i in e.labels}
    moved = {relabel_word(w, mapping): c for w, c in e.terms.items()}
    return reduce(LieElement(e.labels, moved, e.grading))


def relabel(e: LieElement, mapping: Mapping[int, int]) -> LieElement:
    """Rename labels by an injective ``mapping`` (no reduction)."""
    moved = {relabel_word(w, mapping): c for w, c in e.terms.items()}
    return LieElement(tuple(mapping[i] for i in e.labels), moved, e.grading)


def action_matrix(n: int, D: int, sigma: Permutation) -> np.ndarray:
    """Matrix of σ on Lie_D(n) in ``lie_basis(n)``; column j is the image of w_j."""
    if sigma.n != n:
        raise InvalidElement("degree mismatch")
    labels = tuple(range(1, n + 1))
    index = _basis_index(labels)
    size = math.factorial(n - 1)
    mat = np.zeros((size, size), dtype=np.int64)
    for j, w in enumerate(basis_for(labels)):
        moved = right_normed(sigma(a) for a in letters(w))
        for nw, c in normal_form(moved, D):
            mat[index[nw], j] += c
    return mat


def character(n: int, D: int, sigma: Permutation) -> int:
    """Trace of σ acting on Lie_D(n)."""
    if sigma.n != n:
        raise InvalidElement("degree mismatch")
    total = 0
    for w in basis_for(tuple(range(1, n + 1))):
        moved = right_normed(sigma(a) for a in letters(w))
        for nw, c in normal_form(moved, D):
            if nw == w:
                total += c
    return total


# ----------------------------------------------------------------------------
# tensor-algebra oracle

@dataclass(frozen=True, eq=False)
class TensorElement:
    """Integer combination of associative monomials of a common length."""

    degree: int
    coeffs: Mapping[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {m: c for m, c in self.coeffs.items() if c}
        for m in clean:
            if len(m) != self.degree:
                raise InvalidElement("monomials of mixed length")
        object.__setattr__(self, "coeffs", clean)

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = defaultdict(int, self.coeffs)
        for m, c in other.coeffs.items():
            out[m] += c
        return TensorElement(self.degree, out)

    def __mul__(self, k: int) -> "TensorElement":
        return TensorElement(self.degree, {m: k * c for m, c in self.coeffs.items()})

    __rmul__ = __mul__

    def concat(self, other: "TensorElement") -> "TensorElement":
        out: dict[tuple[int, ...], int] = defaultdict(int)
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                out[m1 + m2] += c1 * c2
        return TensorElement(self.degree + other.degree, out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.coeffs == other.coeffs and (self.degree == other.degree or not self.coeffs)


@functools.lru_cache(maxsize=None)
def _expand(w: Word, D: int) -> TensorElement:
    if isinstance(w, int):
        return TensorElement(1, {(w,): 1})
    a, b = _expand(w.left, D), _expand(w.right, D)
    return a.concat(b) + b.concat(a) * (-koszul(D, a.degree, b.degree))


def tensor_expand(w: Word, D: int = 0) -> TensorElement:
    """[a, b] -> ab - (-1)^{|a||b|} ba, letters to length-one monomials."""
    return _expand(w, D)


def tensor_expand_element(e: LieElement) -> TensorElement:
    out = TensorElement(e.degree)
    for w, c in e.terms.items():
        out = out + tensor_expand(w, e.grading) * c
    return out


def random_word(labels: Iterable[int], rng: random.Random) -> Word:
    """Uniformly random leaf order and random binary bracketing."""
    labels = list(labels)
    rng.shuffle(labels)

    def build(seq):
        if len(seq) == 1:
            return seq[0]
        cut = rng.randrange(1, len(seq))
        return Bracket(build(seq[:cut]), build(seq[cut:]))

    return build(labels)
