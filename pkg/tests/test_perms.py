import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lietower.perms import Permutation, transpositions


def perms(n):
    return st.permutations(range(1, n + 1)).map(lambda p: Permutation(tuple(p)))


def test_parse_forms():
    assert Permutation.parse("2,1,3") == Permutation((2, 1, 3))
    assert Permutation.parse("(1 2)", 3) == Permutation((2, 1, 3))
    assert Permutation.parse("(1 2 3)", 3)(3) == 1
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))


def test_composition_is_function_composition():
    s = Permutation((2, 3, 1))
    p = Permutation((2, 1, 3))
    assert all((s * p)(i) == s(p(i)) for i in range(1, 4))


@given(perms(6), perms(6))
def test_sign_is_a_homomorphism(a, b):
    assert (a * b).sign() == a.sign() * b.sign()
    assert (a * a.inverse()).is_identity()


def test_counts():
    assert len(list(Permutation.all(4))) == 24
    assert len(transpositions(4)) == 6
    assert all(t.sign() == -1 for t in transpositions(5))
    rng = random.Random(3)
    assert Permutation.random(5, rng).n == 5


def test_cycles_round_trip():
    p = Permutation.from_cycles([(1, 3), (2, 4, 5)], 6)
    assert Permutation.parse(p.cycle_str(), 6) == p
    assert Permutation.identity(3).cycle_str() == "()"
