import math

import pytest

from lietower import free_lie as fl
from lietower.errors import InvalidInput
from lietower.homology import IntegerMatrix, cohomology_basis, determinant, homology_cycle_basis
from lietower.partitions import PartitionChain, build_nerve, partition_complex_chains
from lietower.perms import Permutation
from lietower.robinson import (
    TwistedLieElement,
    cohomology_action,
    gpc_cohomology_rank,
    robinson_basis,
    robinson_cocycle,
    robinson_map,
    verify_equivariance,
)


def test_cocycle_examples():
    c = robinson_cocycle(Permutation.identity(2), 3)
    assert c.values == {PartitionChain.parse("23|1"): 1}
    c = robinson_cocycle(Permutation((2, 1)), 3)
    assert set(c.values) == {PartitionChain.parse("13|2")}
    assert robinson_cocycle(Permutation((2, 1)), 3, signed=False).values == {PartitionChain.parse("13|2"): 1}
    with pytest.raises(InvalidInput):
        robinson_cocycle(Permutation.identity(1), 2)


@pytest.mark.parametrize("n", range(3, 7))
def test_cocycles_are_closed_and_a_basis(n):
    words = fl.lie_basis(n)
    for w in words[:5]:
        assert robinson_cocycle(Permutation(fl.letters(w)[:-1]), n).is_closed()
    basis = robinson_basis(n)
    assert basis.size == math.factorial(n - 1)
    C = partition_complex_chains(n)
    # pairing against a computed homology basis is unimodular
    Z = homology_cycle_basis(C, n - 3)
    assert abs(determinant(basis.cocycles.transpose() @ Z)) == 1
    if n > 5:
        return  # the dense cocycle basis below is slow at n = 6
    # and so is the change of basis to an independently computed cocycle basis
    other = cohomology_basis(C, n - 3)
    change = other.coordinates(basis.cocycles)
    assert abs(determinant(change)) == 1


def test_robinson_map_is_identity():
    assert robinson_map(3) == IntegerMatrix.identity(2)
    assert robinson_map(4) == IntegerMatrix.identity(6)


@pytest.mark.parametrize("n", range(3, 7))
def test_equivariance_all_transpositions(n):
    report = verify_equivariance(n)
    assert report.passed
    assert len(report.generators) == n * (n - 1) // 2
    assert all(g.defect.is_zero() for g in report.generators)


def test_equivariance_whole_group_n4():
    assert verify_equivariance(4, list(Permutation.all(4))).passed


def test_identity_generator_passes():
    assert verify_equivariance(5, [Permutation.identity(5)]).passed


def test_unsigned_cocycles_are_not_equivariant():
    """The bare indicators need the sgn(σ) correction; record that it matters."""
    n = 3
    tau = Permutation((2, 1, 3))
    signed = cohomology_action(n, tau)
    # in the unsigned basis the matrix is conjugated by diag(sgn σ)
    D = IntegerMatrix.from_dense([[Permutation(fl.letters(w)[:-1]).sign() if i == j else 0
                                   for j, w in enumerate(fl.lie_basis(n))] for i in range(2)])
    unsigned = D @ signed @ D
    target = IntegerMatrix.from_dense((tau.sign() * fl.action_matrix(n, 0, tau)).tolist())
    assert signed == target
    assert unsigned != target


def test_action_is_a_homomorphism():
    n = 4
    s, p = Permutation((2, 3, 1, 4)), Permutation((1, 4, 3, 2))
    assert cohomology_action(n, s * p) == cohomology_action(n, s) @ cohomology_action(n, p)


def test_report_json_shape():
    doc = verify_equivariance(3).to_json_obj()
    assert doc["n"] == 3
    assert [g["perm"] for g in doc["generators"]] == ["(1 2)", "(1 3)", "(2 3)"]
    assert all(g["pass"] is True and g["defect"]["entries"] == [["0", "0"], ["0", "0"]] for g in doc["generators"])


def test_twisted_element():
    e = TwistedLieElement(fl.LieElement.parse("[x1,x2]"))
    assert e.act(Permutation((2, 1))).element == e.element
    assert "sgn" in str(e)


def test_gpc_ranks():
    assert gpc_cohomology_rank(2) == (1, 1)
    assert gpc_cohomology_rank(3) == (2, 2)
    assert gpc_cohomology_rank(5) == (4, 24)
    for n in range(2, 8):
        assert gpc_cohomology_rank(n, compute=n <= 6)[0] == n - 1
    with pytest.raises(InvalidInput):
        gpc_cohomology_rank(1)


def test_top_simplices_lie_in_top_dimension():
    nerve = build_nerve(5)
    for w in fl.lie_basis(5):
        c = robinson_cocycle(Permutation(fl.letters(w)[:-1]), 5)
        (chain,) = c.values
        assert nerve.index_of(chain)[0] == 2
