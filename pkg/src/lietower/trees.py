"""Weighted trees: points of the Goodwillie partition complex.

A weighted tree has leaves labelled by a finite set, rational edge lengths
in [0, 1] (root edge included), and every root-to-leaf path of length
exactly 1.  Trees are stored unordered; children are kept sorted by their
smallest leaf label.  Zero-length internal edges are contracted, since the
two trees name the same point.  A zero root edge or a zero leaf edge makes
the tree the basepoint.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import BasepointInput, InvalidInput
from .free_lie import LieElement, graft
from .perms import Permutation

ONE = Fraction(1)
ZERO = Fraction(0)


@dataclass(frozen=True)
class Leaf:
    label: int
    length: Fraction

    @property
    def leaves(self) -> tuple[int, ...]:
        return (self.label,)


@dataclass(frozen=True)
class Node:
    children: tuple["TreeNode", ...]
    length: Fraction

    @property
    def leaves(self) -> tuple[int, ...]:
        return tuple(sorted(i for c in self.children for i in c.leaves))


TreeNode = Union[Leaf, Node]


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _normalize(node: TreeNode) -> TreeNode:
    if isinstance(node, Leaf):
        return Leaf(node.label, _as_fraction(node.length))
    kids: list[TreeNode] = []
    for child in node.children:
        child = _normalize(child)
        if isinstance(child, Node) and child.length == 0:
            kids.extend(child.children)  # contract a degenerate internal edge
        else:
            kids.append(child)
    kids.sort(key=lambda c: min(c.leaves))
    return Node(tuple(kids), _as_fraction(node.length))


class WeightedTree:
    """Immutable weighted tree; compare with ``==`` after canonicalisation."""

    __slots__ = ("root",)

    def __init__(self, root: TreeNode):
        root = _normalize(root)
        self._validate(root)
        self.root = root

    @staticmethod
    def _validate(root: TreeNode):
        seen: list[int] = []

        def walk(node, height):
            if not (0 <= node.length <= 1):
                raise InvalidInput(f"edge length {node.length} outside [0,1]")
            h = height + node.length
            if isinstance(node, Leaf):
                if h != 1:
                    raise InvalidInput(f"leaf {node.label} sits at distance {h} from the root, not 1")
                seen.append(node.label)
                return
            if len(node.children) < 2:
                raise InvalidInput("internal vertices need at least two children")
            for c in node.children:
                walk(c, h)

        walk(root, ZERO)
        if len(seen) != len(set(seen)):
            raise InvalidInput("leaf labels repeat")

    # -- basic data ---------------------------------------------------------

    @property
    def labels(self) -> tuple[int, ...]:
        return self.root.leaves

    @property
    def root_length(self) -> Fraction:
        return self.root.length

    @property
    def is_basepoint(self) -> bool:
        """Degenerate root edge or leaf edge."""
        if self.root.length == 0:
            return True

        def zero_leaf(node):
            if isinstance(node, Leaf):
                return node.length == 0
            return any(zero_leaf(c) for c in node.children)

        return zero_leaf(self.root)

    def is_binary(self) -> bool:
        def walk(node):
            return isinstance(node, Leaf) or (len(node.children) == 2 and all(walk(c) for c in node.children))
        return walk(self.root)

    def edges(self) -> list[Fraction]:
        out = []

        def walk(node):
            out.append(node.length)
            if isinstance(node, Node):
                for c in node.children:
                    walk(c)

        walk(self.root)
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, WeightedTree) and self.root == other.root

    def __hash__(self):
        return hash(self.root)

    def __repr__(self) -> str:
        return f"WeightedTree({self})"

    # -- text form ----------------------------------------------------------

    def __str__(self) -> str:
        return "(" + _format(self.root) + ")"

    @classmethod
    def parse(cls, text: str) -> "WeightedTree":
        """``leaf = <label>:<len>``, ``internal = (<child>,...):<len>``.

        The whole tree may be wrapped in one extra pair of parentheses, as in
        ``((1:1/2,2:1/2):1/2)``.
        """
        tokens = re.findall(r"\d+/\d+|\d+|[(),:]|\S", text)
        parser = _Parser(tokens)
        node = parser.tree()
        if parser.pos != len(tokens):
            raise InvalidInput(f"trailing input in tree {text!r}")
        return cls(node)

    def to_json_obj(self) -> dict:
        return {"tree": str(self), "basepoint": self.is_basepoint}


def _fmt_len(x: Fraction) -> str:
    return str(x)  # Fraction prints as p/q or p


def _format(node: TreeNode) -> str:
    if isinstance(node, Leaf):
        return f"{node.label}:{_fmt_len(node.length)}"
    return "(" + ",".join(_format(c) for c in node.children) + "):" + _fmt_len(node.length)


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise InvalidInput(f"tree syntax: expected {expected or 'a token'} at position {self.pos}, got {tok}")
        self.pos += 1
        return tok

    def length(self) -> Fraction:
        tok = self.take()
        try:
            value = Fraction(tok)
        except ValueError as exc:
            raise InvalidInput(f"bad edge length {tok!r}") from exc
        return value

    def tree(self) -> TreeNode:
        return self.node(allow_bare=True)

    def node(self, allow_bare: bool = False) -> TreeNode:
        if self.peek() == "(":
            self.take("(")
            kids = [self.node()]
            while self.peek() == ",":
                self.take(",")
                kids.append(self.node())
            self.take(")")
            if self.peek() == ":":
                self.take(":")
                return Node(tuple(kids), self.length())
            if allow_bare and len(kids) == 1:
                return kids[0]  # outer wrapper
            raise InvalidInput("internal vertex without an edge length")
        tok = self.take()
        if not tok.isdigit():
            raise InvalidInput(f"expected a leaf label, got {tok!r}")
        self.take(":")
        return Leaf(int(tok), self.length())


# ----------------------------------------------------------------------------
# T-matrix

@dataclass(frozen=True)
class TMatrix:
    """Symmetric matrix T[i][h] indexed by the sorted leaf labels."""

    labels: tuple[int, ...]
    entries: tuple[tuple[Fraction, ...], ...]

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, h = key
        pos = {a: k for k, a in enumerate(self.labels)}
        return self.entries[pos[i]][pos[h]]

    def is_symmetric(self) -> bool:
        m = len(self.labels)
        return all(self.entries[a][b] == self.entries[b][a] for a in range(m) for b in range(m))

    def is_ultrametric(self) -> bool:
        """Among T_ih, T_ik, T_hk the two smallest values coincide."""
        m = len(self.labels)
        for a in range(m):
            for b in range(a + 1, m):
                for c in range(b + 1, m):
                    vals = sorted((self.entries[a][b], self.entries[a][c], self.entries[b][c]))
                    if vals[0] != vals[1]:
                        return False
        return True

    def conjugate(self, sigma: Permutation | Mapping[int, int]) -> "TMatrix":
        """The matrix T' with T'[σ(i), σ(h)] = T[i, h]."""
        mapping = _mapping(sigma, self.labels)
        new_labels = tuple(sorted(mapping[i] for i in self.labels))
        pos = {a: k for k, a in enumerate(new_labels)}
        m = len(new_labels)
        rows = [[ONE] * m for _ in range(m)]
        for a, i in enumerate(self.labels):
            for b, h in enumerate(self.labels):
                rows[pos[mapping[i]]][pos[mapping[h]]] = self.entries[a][b]
        return TMatrix(new_labels, tuple(map(tuple, rows)))

    def restrict(self, subset: Iterable[int]) -> "TMatrix":
        sub = tuple(sorted(subset))
        return TMatrix(sub, tuple(tuple(self[i, h] for h in sub) for i in sub))

    def to_json_obj(self) -> dict:
        return {"labels": list(self.labels),
                "entries": [[str(x) for x in row] for row in self.entries]}

    def __str__(self) -> str:
        width = max(len(str(x)) for row in self.entries for x in row)
        head = " " * (width + 1) + " ".join(f"{i:>{width}}" for i in self.labels)
        body = [f"{i:>{width}} " + " ".join(f"{str(x):>{width}}" for x in row)
                for i, row in zip(self.labels, self.entries)]
        return "\n".join([head] + body)


def _mapping(sigma: Permutation | Mapping[int, int], labels: Sequence[int]) -> dict[int, int]:
    if isinstance(sigma, Permutation):
        return {i: sigma(i) for i in labels}
    mapping = {i: sigma[i] for i in labels}
    if len(set(mapping.values())) != len(mapping):
        raise InvalidInput("relabelling is not injective")
    return mapping


def t_matrix(t: WeightedTree) -> TMatrix:
    """T_ih = root distance of the lowest common vertex of leaves i and h; T_ii = 1."""
    if t.is_basepoint:
        raise BasepointInput("the basepoint has no T-matrix")
    labels = t.labels
    pos = {a: k for k, a in enumerate(labels)}
    m = len(labels)
    rows = [[ONE] * m for _ in range(m)]

    def walk(node, height):
        h = height + node.length
        if isinstance(node, Leaf):
            return
        groups = [c.leaves for c in node.children]
        for x in range(len(groups)):
            for y in range(x + 1, len(groups)):
                for i in groups[x]:
                    for j in groups[y]:
                        rows[pos[i]][pos[j]] = rows[pos[j]][pos[i]] = h
        for c in node.children:
            walk(c, h)

    walk(t.root, ZERO)
    return TMatrix(labels, tuple(map(tuple, rows)))


def tree_from_t_matrix(T: TMatrix) -> WeightedTree:
    """Rebuild the (contracted) tree with the given T-matrix.

    Requires the ultrametric condition and off-diagonal entries in (0, 1).
    """
    if not (T.is_symmetric() and T.is_ultrametric()):
        raise InvalidInput("not a T-matrix: symmetry or the triple condition fails")

    def build(block: tuple[int, ...], parent: Fraction) -> TreeNode:
        if len(block) == 1:
            return Leaf(block[0], ONE - parent)
        h = min(T[i, j] for i in block for j in block if i < j)
        if not (parent < h < 1):
            raise InvalidInput("T-matrix entries must lie strictly between the parent height and 1")
        classes: list[list[int]] = []
        for i in block:
            for cls in classes:
                if T[i, cls[0]] > h:
                    cls.append(i)
                    break
            else:
                classes.append([i])
        return Node(tuple(build(tuple(c), h) for c in classes), h - parent)

    labels = T.labels
    if len(labels) == 1:
        return WeightedTree(Leaf(labels[0], ONE))
    return WeightedTree(build(labels, ZERO))


# ----------------------------------------------------------------------------
# ungrafting and grafting

class Basepoint:
    """The basepoint of GPC_S, returned by ungrafting degenerate shapes."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Basepoint"

    def to_json_obj(self) -> dict:
        return {"basepoint": True}


BASEPOINT = Basepoint()


@dataclass(frozen=True)
class Ungrafted:
    T0: Fraction
    left: WeightedTree
    right: WeightedTree

    def to_json_obj(self) -> dict:
        return {"basepoint": False, "T0": str(self.T0), "t1": str(self.left), "t2": str(self.right)}


def _rescaled(node: TreeNode, factor: Fraction) -> TreeNode:
    if isinstance(node, Leaf):
        return Leaf(node.label, node.length * factor)
    return Node(tuple(_rescaled(c, factor) for c in node.children), node.length * factor)


def ungraft(t: WeightedTree, S1: Iterable[int], S2: Iterable[int]) -> Union[Basepoint, Ungrafted]:
    """Split ``t = [t1, t2]`` at its root vertex, rescaling by 1/(1 - T0).

    Anything not of that shape (wrong arity, leaf sets not {S1, S2}, or a
    degenerate tree) goes to the basepoint.
    """
    S1, S2 = frozenset(S1), frozenset(S2)
    if S1 & S2 or S1 | S2 != frozenset(t.labels):
        raise InvalidInput("S1 and S2 must partition the leaf set")
    if t.is_basepoint or isinstance(t.root, Leaf) or len(t.root.children) != 2:
        return BASEPOINT
    a, b = t.root.children
    if frozenset(a.leaves) != S1:
        a, b = b, a
    if frozenset(a.leaves) != S1 or frozenset(b.leaves) != S2:
        return BASEPOINT
    T0 = t.root.length
    scale = 1 / (ONE - T0)
    return Ungrafted(T0, WeightedTree(_rescaled(a, scale)), WeightedTree(_rescaled(b, scale)))


def graft_trees(T0, t1: WeightedTree, t2: WeightedTree) -> WeightedTree:
    """Binary root at height T0 over t1, t2 scaled by (1 - T0).

    T0 = 0 or 1 yields a tree flagged as the basepoint.
    """
    T0 = _as_fraction(T0)
    if not (0 <= T0 <= 1):
        raise InvalidInput("T0 must lie in [0, 1]")
    if set(t1.labels) & set(t2.labels):
        raise InvalidInput("leaf sets must be disjoint")
    if t1.is_basepoint or t2.is_basepoint:
        raise BasepointInput("cannot graft the basepoint")
    scale = ONE - T0
    return WeightedTree(Node((_rescaled(t1.root, scale), _rescaled(t2.root, scale)), T0))


def leaf_tree(label: int) -> WeightedTree:
    return WeightedTree(Leaf(label, ONE))


def star_tree(labels: Iterable[int], a) -> WeightedTree:
    a = _as_fraction(a)
    return WeightedTree(Node(tuple(Leaf(i, ONE - a) for i in labels), a))


def relabel_tree(t: WeightedTree, sigma: Permutation | Mapping[int, int]) -> WeightedTree:
    mapping = _mapping(sigma, t.labels)

    def walk(node):
        if isinstance(node, Leaf):
            return Leaf(mapping[node.label], node.length)
        return Node(tuple(walk(c) for c in node.children), node.length)

    return WeightedTree(walk(t.root))


# ----------------------------------------------------------------------------
# caterpillars

def caterpillar(sigma: Permutation, theta: Sequence) -> WeightedTree:
    """The weighted caterpillar of w_σ.

    Spine vertex i sits at root distance θ_i (i = 1..n-1) and carries leaf
    σ(i); leaf n hangs off the last spine vertex.  σ may be given on n-1
    letters or on n letters fixing n.
    """
    theta = [_as_fraction(x) for x in theta]
    n = len(theta) + 1
    if sigma.n == n - 1:
        sigma = sigma.extend(n)
    if sigma.n != n or sigma(n) != n:
        raise InvalidInput(f"σ must permute 1..{n - 1}")
    if any(not (0 <= x <= 1) for x in theta):
        raise InvalidInput("θ must lie in [0, 1]")
    if any(a > b for a, b in zip(theta, theta[1:])):
        raise InvalidInput("θ must be nondecreasing")
    node: TreeNode = Leaf(n, ONE - theta[-1])
    for i in range(n - 1, 0, -1):
        below = theta[i - 2] if i > 1 else ZERO
        node = Node((Leaf(sigma(i), ONE - theta[i - 1]), node), theta[i - 1] - below)
    return WeightedTree(node)


def caterpillar_t_entry(sigma: Permutation, theta: Sequence, a: int, b: int) -> Fraction:
    """Closed form: T_{σ(i),σ(j)} = θ_min(i,j), T_{σ(i),n} = θ_i."""
    n = len(theta) + 1
    if sigma.n == n - 1:
        sigma = sigma.extend(n)
    if a == b:
        return ONE
    pos = {sigma(i): i for i in range(1, n)}
    pos[n] = n - 1
    return _as_fraction(theta[min(pos[a], pos[b]) - 1])


# ----------------------------------------------------------------------------
# random trees and the Lie-level shadow

def random_fraction(rng: random.Random, denom: int = 60) -> Fraction:
    """Uniform-ish rational strictly inside (0, 1)."""
    return Fraction(rng.randint(1, denom - 1), denom)


def random_binary_tree(labels: Sequence[int], rng: random.Random, denom: int = 60) -> WeightedTree:
    """Binary tree with random shape and rational heights strictly inside (0, 1)."""
    labels = list(labels)
    if len(labels) == 1:
        return leaf_tree(labels[0])

    def build(block: list[int], parent: Fraction) -> TreeNode:
        if len(block) == 1:
            return Leaf(block[0], ONE - parent)
        h = parent + (ONE - parent) * random_fraction(rng, denom)
        rng.shuffle(block)
        cut = rng.randint(1, len(block) - 1)
        return Node((build(block[:cut], h), build(block[cut:], h)), h - parent)

    return WeightedTree(build(labels, ZERO))


def random_theta(m: int, rng: random.Random, denom: int = 60) -> list[Fraction]:
    return sorted(random_fraction(rng, denom) for _ in range(m))


def graft_bracket_shadow(e1: LieElement, e2: LieElement) -> LieElement:
    """The grafting bracket on first nonvanishing homotopy: grafting of Lie trees."""
    return graft(e1, e2)
