"""Robinson's isomorphism H^{n-3}(|Π_n|) -> Lie(n) ⊗ sgn and its equivariance.

Orientation convention: simplices are chains ordered fine -> coarse and Σ_n
acts by relabelling, so the action on chains carries no signs.  With that
orientation the plain indicator cochains of the top simplices of w_σ do not
give an equivariant map onto Lie(n) ⊗ sgn; the signed cochains

    c_σ = sgn(σ) · [top simplex of w_σ]

do, and those are what :func:`robinson_cocycle` returns by default.  The twist
stays on the Lie side: τ acts on Lie(n) ⊗ sgn by ``sgn(τ) · act(τ, ·)``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConsistencyError, InvalidInput
from .free_lie import LieElement, act, action_matrix, lie_basis, letters, right_normed
from .homology import (
    CohomologyBasis,
    IntegerChainComplex,
    IntegerMatrix,
    cohomology_basis,
    homology,
    induced_map_on_cohomology,
)
from .partitions import NerveComplex, PartitionChain, build_nerve, partition_complex_chains, top_simplex_of_tree
from .perms import Permutation, transpositions


@dataclass(frozen=True)
class Cocycle:
    """Integer cochain on the top simplices of the nerve of Π_n."""

    n: int
    values: dict[PartitionChain, int] = field(default_factory=dict)

    def vector(self, nerve: NerveComplex) -> dict[int, int]:
        out = {}
        for chain, v in self.values.items():
            k, i = nerve.index_of(chain)
            if k != self.n - 3:
                raise InvalidInput(f"{chain} is not a top simplex")
            out[i] = v
        return out

    def is_closed(self) -> bool:
        """Top-degree cochains are always closed; checked anyway against δ."""
        C = partition_complex_chains(self.n)
        k = self.n - 3
        vec = IntegerMatrix(C.dims[k], 1, [self.vector(build_nerve(self.n))])
        return (C.boundary(k + 1).transpose() @ vec).is_zero()

    def __str__(self) -> str:
        return " + ".join(f"{v}*<{c}>" for c, v in sorted(self.values.items(), key=lambda t: str(t[0])))


@dataclass(frozen=True)
class TwistedLieElement:
    """An element of Lie(n) ⊗ sgn_n."""

    element: LieElement

    def act(self, sigma: Permutation) -> "TwistedLieElement":
        return TwistedLieElement(act(sigma, self.element) * sigma.sign())

    def __str__(self) -> str:
        return f"({self.element}) ⊗ sgn"


def _sigma_of(sigma: Permutation, n: int) -> tuple[int, ...]:
    if sigma.n == n - 1:
        sigma = sigma.extend(n)
    if sigma.n != n or sigma(n) != n:
        raise InvalidInput(f"σ must lie in Σ_{n - 1} (fixing {n})")
    return tuple(sigma(i) for i in range(1, n))


def robinson_cocycle(sigma: Permutation, n: int, signed: bool = True) -> Cocycle:
    """c_σ for σ ∈ Σ_{n-1} (given on n-1 letters or on n letters fixing n).

    ``signed=False`` returns the bare indicator of the top simplex of w_σ.
    """
    if n < 3:
        raise InvalidInput("Robinson cocycles need n >= 3")
    head = _sigma_of(sigma, n)
    chain = top_simplex_of_tree(right_normed(head + (n,)), n)
    coeff = Permutation(head).sign() if signed else 1
    return Cocycle(n, {chain: coeff})


def _cocycle_matrix(n: int, signed: bool = True) -> IntegerMatrix:
    nerve = build_nerve(n)
    cols = []
    for w in lie_basis(n):
        head = letters(w)[:-1]
        cols.append(robinson_cocycle(Permutation(head), n, signed).vector(nerve))
    return IntegerMatrix(len(nerve.simplices[n - 3]), len(cols), cols)


@functools.lru_cache(maxsize=8)
def robinson_basis(n: int) -> CohomologyBasis:
    """The classes [c_σ] as a basis of H^{n-3}; raises if they are not one."""
    C = partition_complex_chains(n)
    try:
        return cohomology_basis(C, n - 3, _cocycle_matrix(n))
    except ConsistencyError as exc:
        raise ConsistencyError(f"Robinson cocycles do not form a basis for n={n}: {exc}") from exc


def robinson_map(n: int) -> IntegerMatrix:
    """Matrix of [c_σ] -> w_σ ⊗ sgn in the bases ([c_σ]) and ``lie_basis(n)``."""
    basis = robinson_basis(n)
    if basis.size != math.factorial(n - 1):
        raise ConsistencyError("cohomology rank differs from dim Lie(n)")
    return IntegerMatrix.identity(basis.size)


def simplicial_chain_map(n: int, sigma: Permutation) -> dict[int, IntegerMatrix]:
    """Chain map of the relabelling by σ on the augmented chains of |Π_n|."""
    nerve = build_nerve(n)
    C = partition_complex_chains(n)
    f = {-1: IntegerMatrix.identity(1)}
    for k in range(0, nerve.dim + 1):
        image = nerve.act_indices(sigma, k)
        f[k] = IntegerMatrix(C.dims[k], C.dims[k], [{image[i]: 1} for i in range(C.dims[k])])
    return f


def cohomology_action(n: int, sigma: Permutation) -> IntegerMatrix:
    """Matrix of σ on H^{n-3} in the [c_σ] basis (left action, pullback by σ^{-1})."""
    C = partition_complex_chains(n)
    basis = robinson_basis(n)
    f = simplicial_chain_map(n, sigma.inverse())
    return induced_map_on_cohomology(f, C, C, n - 3, basis, basis)


@dataclass
class GeneratorCheck:
    perm: Permutation
    passed: bool
    defect: IntegerMatrix

    def to_json_obj(self) -> dict:
        return {"perm": self.perm.cycle_str(), "pass": self.passed, "defect": self.defect.to_json_obj()}


@dataclass
class EquivarianceReport:
    n: int
    generators: list[GeneratorCheck]

    @property
    def passed(self) -> bool:
        return all(g.passed for g in self.generators)

    def to_json_obj(self) -> dict:
        return {"n": self.n, "generators": [g.to_json_obj() for g in self.generators]}

    def __str__(self) -> str:
        lines = [f"n={self.n}: {'pass' if self.passed else 'FAIL'}"]
        for g in self.generators:
            lines.append(f"  {g.perm.cycle_str():>8}  {'pass' if g.passed else 'FAIL'}")
        return "\n".join(lines)


def verify_equivariance(n: int, generators: list[Permutation] | None = None) -> EquivarianceReport:
    """Compare σ on H^{n-3} with sgn(σ)·σ on Lie(n) through :func:`robinson_map`.

    Defaults to all transpositions, which generate Σ_n.
    """
    if n < 3:
        raise InvalidInput("n must be at least 3")
    R = robinson_map(n)
    checks = []
    for tau in generators if generators is not None else transpositions(n):
        lhs = R @ cohomology_action(n, tau)
        target = IntegerMatrix.from_dense((tau.sign() * action_matrix(n, 0, tau)).tolist())
        rhs = target @ R
        defect = lhs - rhs
        checks.append(GeneratorCheck(tau, defect.is_zero(), defect))
    return EquivarianceReport(n, checks)


def gpc_cohomology_rank(n: int, compute: bool = True) -> tuple[int, int]:
    """(degree, rank) of the reduced cohomology of GPC_n.

    GPC_n is the double suspension of |Π_n|, so the degree is (n-3)+2.  With
    ``compute`` the rank is read off the partition complex; otherwise (n-1)!.
    """
    if n < 2:
        raise InvalidInput("n must be at least 2")
    if not compute:
        return n - 1, math.factorial(n - 1)
    summary = homology(partition_complex_chains(n))
    degrees = summary.nonzero_degrees()
    if degrees != [n - 3] or summary.torsion(n - 3):
        raise ConsistencyError(f"unexpected homology of |Π_{n}|: {summary}")
    # free homology: H^k and H_k have equal rank
    return n - 3 + 2, summary.rank(n - 3)
