import itertools
import json
import random

import pytest
from hypothesis import given, strategies as st

from lietower import free_lie as fl
from lietower.errors import GroupClash, InvalidElement, InvalidInput, LabelClash
from lietower.grasper import (
    DecoratedLieElement as DL,
    FiniteGroupTable,
    GroupRingElement,
    decorated_act,
    decorated_basis,
    decorated_coordinates,
    decorated_rank,
    decorated_reduce,
    decorated_reduce_by_rewriting,
    grasper_bracket,
    grasper_bracket_unreduced,
    random_decorated,
    small_groups,
)
from lietower.perms import Permutation

C2 = FiniteGroupTable.cyclic(2)
C3 = FiniteGroupTable.cyclic(3)
S3 = FiniteGroupTable.symmetric(3)
W = fl.parse_word


def single(text, dec, group=C3):
    return DL.single(W(text), dec, group)


# ---------------------------------------------------------------- groups

@pytest.mark.parametrize("table", [
    [],
    [[0, 1], [1]],
    [[0, 2], [1, 0]],        # entry out of range
    [[1, 0], [0, 1]],        # 0 is not the identity
    [[0, 1, 2], [1, 1, 1], [2, 1, 0]],  # 1 has no inverse
])
def test_bad_tables(table):
    with pytest.raises(InvalidInput):
        FiniteGroupTable(table)


def test_non_associative_table():
    # a Latin square with identity 0 that is not a group (order 5 loop)
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(InvalidInput):
        FiniteGroupTable(t)


def test_group_constructors():
    assert FiniteGroupTable.trivial().order == 1
    assert C3.mul(2, 2) == 1
    assert S3.order == 6
    assert any(S3.mul(a, b) != S3.mul(b, a) for a in range(6) for b in range(6))
    orders = sorted(g.order for g in small_groups(6))
    assert orders == [1, 2, 3, 4, 4, 5, 6, 6]


@pytest.mark.parametrize("g", small_groups(6))
def test_group_json_round_trip(g):
    text = json.dumps(g.to_json_obj())
    assert FiniteGroupTable.from_json(text) == g


def test_group_json_order_mismatch():
    obj = C2.to_json_obj()
    obj["order"] = 3
    with pytest.raises(InvalidInput):
        FiniteGroupTable.from_json(obj)


def test_group_ring_arithmetic():
    a = GroupRingElement(C3, {1: 2})
    b = GroupRingElement(C3, {2: 1, 0: -1})
    assert (a * b) == GroupRingElement(C3, {0: 2, 1: -2})
    with pytest.raises(GroupClash):
        a + GroupRingElement(C2, {1: 1})


# ---------------------------------------------------------------- reduce

def test_reduce_antisymmetry_keeps_decorations():
    e = single("[x2,x1]", (1, 2))
    assert decorated_reduce(e, 0) == -single("[x1,x2]", (1, 2))


def test_reduce_jacobi_fixed_decoration():
    dec = (2, 0, 1)
    e = single("[x1,[x2,x3]]", dec) + single("[x2,[x3,x1]]", dec) + single("[x3,[x1,x2]]", dec)
    assert decorated_reduce(e).is_zero()


def test_reduce_identity_decorations_matches_free_lie():
    rng = random.Random(1)
    for _ in range(50):
        n = rng.randint(1, 6)
        w = fl.random_word(range(1, n + 1), rng)
        red = decorated_reduce(DL.single(w, (0,) * n, C2))
        assert red.word_part() == fl.reduce(fl.LieElement.from_word(w))


def test_reduce_rewriting_agrees():
    rng = random.Random(2)
    for _ in range(100):
        labels = list(range(1, rng.randint(2, 6) + 1))
        e = random_decorated(labels, rng.choice(small_groups(4)), rng, n_terms=3)
        assert decorated_reduce(e) == decorated_reduce_by_rewriting(e, random.Random(rng.random()))


def test_degree_mismatch_errors():
    with pytest.raises(InvalidElement):
        DL.single(W("[x1,x2]"), (0,), C2)
    with pytest.raises(InvalidElement):
        DL.single(W("[x1,x2]"), (0, 5), C2)
    with pytest.raises(InvalidElement):
        single("[x1,x2]", (0, 1)) + single("[x1,x3]", (0, 1))


def test_parse_and_str():
    e = DL.parse("2*[x1,x2]@(g0,g1) + -1*[x2,x1]@(g1,g0)", C2)
    assert str(e) == "2*[x1,x2]@(g0,g1) + -1*[x2,x1]@(g1,g0)"
    assert DL.parse(str(e), C2) == e
    assert DL.parse("0", C2, labels=[1, 2]).is_zero()
    with pytest.raises(InvalidElement):
        DL.parse("0", C2)
    with pytest.raises(InvalidElement):
        DL.parse("[x1,x2]", C2)


# ---------------------------------------------------------------- bracket

def test_bracket_base_case():
    assert grasper_bracket(single("x1", (1,)), single("x2", (2,))) == single("[x1,x2]", (1, 2))


def test_bracket_with_zero():
    e1 = single("[x1,x2]", (1, 2))
    assert grasper_bracket(e1, DL.zero([3], C3)).is_zero()


def test_bracket_three_leaves():
    got = grasper_bracket(single("[x1,x2]", (1, 2)), single("x3", (0,)))
    assert got == single("[x1,[x2,x3]]", (1, 2, 0)) - single("[x2,[x1,x3]]", (1, 2, 0))
    assert fl.tensor_expand_element(got.word_part() - fl.LieElement.from_word(W("[[x1,x2],x3]"))).is_zero()


def test_bracket_decorations_by_leaf():
    got = grasper_bracket(single("x3", (2,)), single("[x1,x2]", (0, 1)))
    assert {dec for (_, dec) in got.terms} == {(0, 1, 2)}


def test_bracket_errors():
    with pytest.raises(GroupClash):
        grasper_bracket(single("x1", (0,), C2), single("x2", (0,), C3))
    with pytest.raises(LabelClash):
        grasper_bracket(single("x1", (0,)), single("[x1,x2]", (0, 0)))


def test_decorated_antisymmetry():
    rng = random.Random(4)
    for _ in range(200):
        total = rng.randint(2, 6)
        labels = list(range(1, total + 1))
        rng.shuffle(labels)
        k = rng.randint(1, total - 1)
        G = rng.choice(small_groups(6))
        e1 = random_decorated(labels[:k], G, rng)
        e2 = random_decorated(labels[k:], G, rng)
        assert (grasper_bracket(e1, e2) + grasper_bracket(e2, e1)).is_zero()


def test_decorated_jacobi():
    rng = random.Random(6)
    for _ in range(60):
        G = rng.choice(small_groups(6))
        labels = list(range(1, rng.randint(3, 6) + 1))
        rng.shuffle(labels)
        a, b = sorted(rng.sample(range(1, len(labels)), 2))
        x = random_decorated(labels[:a], G, rng, n_terms=2)
        y = random_decorated(labels[a:b], G, rng, n_terms=2)
        z = random_decorated(labels[b:], G, rng, n_terms=2)
        jac = (grasper_bracket(x, grasper_bracket(y, z)) + grasper_bracket(y, grasper_bracket(z, x))
               + grasper_bracket(z, grasper_bracket(x, y)))
        assert jac.is_zero()


def test_bilinearity():
    rng = random.Random(9)
    for _ in range(50):
        a = random_decorated([1, 2], C3, rng)
        b = random_decorated([1, 2], C3, rng)
        c = random_decorated([3, 4, 5], C3, rng)
        assert grasper_bracket(a + b, c) == grasper_bracket(a, c) + grasper_bracket(b, c)
        assert grasper_bracket(c, 3 * a) == 3 * grasper_bracket(c, a)


def test_word_part_is_tree_grafting():
    rng = random.Random(10)
    for _ in range(100):
        total = rng.randint(2, 6)
        k = rng.randint(1, total - 1)
        e1 = random_decorated(list(range(1, k + 1)), C2, rng)
        e2 = random_decorated(list(range(k + 1, total + 1)), C2, rng)
        assert grasper_bracket(e1, e2).word_part() == fl.graft(e1.word_part(), e2.word_part())


def test_unreduced_bracket_reduces_to_bracket():
    e1, e2 = single("[x2,x1]", (0, 1)), single("x3", (2,))
    raw = grasper_bracket_unreduced(e1, e2)
    assert decorated_reduce(raw) == grasper_bracket(e1, e2)


# ---------------------------------------------------------------- action

def test_act_examples():
    e = single("[x1,x2]", (1, 2))
    assert decorated_act(Permutation.identity(2), e) == e
    assert decorated_act(Permutation((2, 1)), e) == -single("[x1,x2]", (2, 1))


def test_act_label_mismatch():
    with pytest.raises(InvalidElement):
        decorated_act(Permutation.identity(3), single("[x1,x2]", (1, 2)))


def test_transpositions_are_involutions():
    rng = random.Random(12)
    for _ in range(100):
        n = rng.randint(2, 6)
        i, j = rng.sample(range(1, n + 1), 2)
        t = Permutation.transposition(i, j, n)
        e = decorated_reduce(random_decorated(list(range(1, n + 1)), S3, rng))
        assert decorated_act(t, decorated_act(t, e)) == e


def test_action_composes():
    rng = random.Random(13)
    for _ in range(100):
        n = rng.randint(1, 5)
        s, t = Permutation.random(n, rng), Permutation.random(n, rng)
        e = random_decorated(list(range(1, n + 1)), C3, rng)
        assert decorated_act(s, decorated_act(t, e)) == decorated_act(s * t, e)


def test_action_commutes_with_bracket():
    rng = random.Random(14)
    for _ in range(50):
        e1 = random_decorated([1, 2], C3, rng)
        e2 = random_decorated([3, 4], C3, rng)
        s = Permutation.random(4, rng)
        lhs = decorated_act(s, grasper_bracket(e1, e2))
        # act on each factor by the restricted relabelling, then bracket
        f1 = DL(tuple(s(i) for i in e1.labels), C3,
                {(fl.relabel_word(w, {i: s(i) for i in e1.labels}),
                  tuple(d for _, d in sorted(zip((s(i) for i in e1.labels), dec)))): c
                 for (w, dec), c in e1.terms.items()})
        f2 = DL(tuple(s(i) for i in e2.labels), C3,
                {(fl.relabel_word(w, {i: s(i) for i in e2.labels}),
                  tuple(d for _, d in sorted(zip((s(i) for i in e2.labels), dec)))): c
                 for (w, dec), c in e2.terms.items()})
        assert lhs == grasper_bracket(f1, f2)


# ---------------------------------------------------------------- rank and basis

def test_rank_examples():
    assert decorated_rank(2, 0, 1) == 1
    assert decorated_rank(3, 0, 2) == 16
    assert decorated_rank(4, 0, 1) == 6
    with pytest.raises(InvalidInput):
        decorated_rank(0, 0, 1)


@given(st.integers(1, 8), st.integers(0, 4), st.integers(1, 7))
def test_rank_formula(n, D, g):
    assert decorated_rank(n, D, g) == decorated_rank(n, 0, g)
    assert decorated_rank(n, D, g) == decorated_rank(n, 0, 1) * g ** n


@pytest.mark.parametrize("n,g", [(n, g) for n in range(1, 6) for g in range(1, 4) if g ** n * n <= 600])
def test_basis_spans_and_is_independent(n, g):
    G = FiniteGroupTable.cyclic(g)
    basis = decorated_basis(n, G)
    assert len(basis) == len(set(basis)) == decorated_rank(n, 0, g)
    # independence: per decoration the words are the tensor-independent right-normed basis,
    # and distinct decorations occupy disjoint summands
    words = {w for (w, _) in basis}
    assert words == set(fl.lie_basis(n))
    for dec in itertools.islice(itertools.product(range(g), repeat=n), 3):
        assert sum(1 for (_, d) in basis if d == dec) == len(fl.lie_basis(n))
    # spanning: random elements reduce into the basis
    rng = random.Random(n * 10 + g)
    basis_set = set(basis)
    for _ in range(10):
        e = random_decorated(list(range(1, n + 1)), G, rng)
        assert set(decorated_coordinates(e)) <= basis_set
