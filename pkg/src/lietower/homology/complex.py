"""Integer chain complexes, their homology, and induced maps on cohomology."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from ..errors import ConsistencyError, NotAComplex, NotChainMap
from ._kernels import Reduction, reduce_columns
from .matrix import IntegerMatrix
from .snf import invariant_factors, smith_normal_form


class IntegerChainComplex:
    """Free chain complex ``C_lo <- ... <- C_hi`` given by boundary matrices.

    ``boundaries[k]`` is ∂_k : C_k -> C_{k-1} with shape ``(dims[k-1], dims[k])``;
    missing boundaries are zero.  An augmented complex carries ``C_{-1} = Z``
    and the augmentation as ∂_0, so its homology is reduced homology.
    """

    def __init__(self, dims: Mapping[int, int], boundaries: Mapping[int, IntegerMatrix] | None = None,
                 augmented: bool = False, check: bool = True):
        if not dims:
            raise ValueError("a chain complex needs at least one degree")
        lo, hi = min(dims), max(dims)
        self.dims = {k: int(dims.get(k, 0)) for k in range(lo, hi + 1)}
        self.augmented = augmented
        self.boundaries: dict[int, IntegerMatrix] = {}
        for k in range(lo + 1, hi + 1):
            mat = (boundaries or {}).get(k)
            if mat is None:
                mat = IntegerMatrix.zeros(self.dims[k - 1], self.dims[k])
            if mat.shape != (self.dims[k - 1], self.dims[k]):
                raise ValueError(f"∂_{k} has shape {mat.shape}, expected {(self.dims[k - 1], self.dims[k])}")
            self.boundaries[k] = mat
        if check:
            self.check()

    @property
    def degrees(self) -> range:
        return range(min(self.dims), max(self.dims) + 1)

    def boundary(self, k: int) -> IntegerMatrix:
        if k in self.boundaries:
            return self.boundaries[k]
        return IntegerMatrix.zeros(self.dims.get(k - 1, 0), self.dims.get(k, 0))

    def check(self):
        for k in self.degrees:
            if k - 1 in self.boundaries and k in self.boundaries:
                if not (self.boundaries[k - 1] @ self.boundaries[k]).is_zero():
                    raise NotAComplex(f"∂_{k - 1} ∘ ∂_{k} != 0")

    def dual(self) -> "IntegerChainComplex":
        """The cochain complex regraded as a chain complex: degree k -> -k."""
        dims = {-k: d for k, d in self.dims.items()}
        bnd = {-(k - 1): m.transpose() for k, m in self.boundaries.items()}
        return IntegerChainComplex(dims, bnd, check=False)

    def change_basis(self, bases: Mapping[int, IntegerMatrix]) -> "IntegerChainComplex":
        """Conjugate by invertible ``bases[k]`` (new basis vectors as columns)."""
        inv = {k: unimodular_inverse(b) for k, b in bases.items()}
        bnd = {}
        for k, m in self.boundaries.items():
            left = inv.get(k - 1, IntegerMatrix.identity(self.dims[k - 1]))
            right = bases.get(k, IntegerMatrix.identity(self.dims[k]))
            bnd[k] = left @ m @ right
        return IntegerChainComplex(self.dims, bnd, self.augmented)


@dataclass
class HomologyGroup:
    rank: int
    torsion: list[int] = field(default_factory=list)

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion


@dataclass
class HomologySummary:
    groups: dict[int, HomologyGroup]

    def rank(self, k: int) -> int:
        g = self.groups.get(k)
        return g.rank if g else 0

    def torsion(self, k: int) -> list[int]:
        g = self.groups.get(k)
        return list(g.torsion) if g else []

    def nonzero_degrees(self) -> list[int]:
        return [k for k, g in sorted(self.groups.items()) if not g.is_zero()]

    def to_json_obj(self) -> list[dict]:
        return [{"degree": k, "rank": g.rank, "torsion": g.torsion} for k, g in sorted(self.groups.items())]

    def __str__(self) -> str:
        parts = []
        for k in self.nonzero_degrees():
            g = self.groups[k]
            terms = ([f"Z^{g.rank}"] if g.rank else []) + [f"Z/{d}" for d in g.torsion]
            parts.append(f"H_{k} = " + " + ".join(terms))
        return "; ".join(parts) if parts else "all homology vanishes"


def _reduce(mat: IntegerMatrix, clear=None, track=False, backend=None) -> Reduction:
    indptr, indices, data = mat.csc()
    return reduce_columns(indptr, indices, data, mat.rows, clear=clear, track=track, backend=backend)


def homology(C: IntegerChainComplex, backend: str | None = None) -> HomologySummary:
    """Ranks and torsion of H_k for every degree of ``C``.

    Ranks come from sparse column reduction, top degree first, clearing
    columns already known to be cycles.  When every pivot of ∂_{k+1} is a
    unit the image is a direct summand and H_k is free; otherwise torsion
    is read off a dense Smith normal form of ∂_{k+1}.
    """
    degrees = list(C.degrees)
    ranks = {k: 0 for k in degrees}
    unit = {k: True for k in degrees}
    clear = None
    for k in reversed(degrees[1:]):
        mat = C.boundary(k)
        red = _reduce(mat, clear=clear, backend=backend)
        ranks[k] = red.rank
        unit[k] = red.all_unit
        clear = np.zeros(mat.rows, dtype=np.bool_)
        for j in np.flatnonzero(red.low >= 0):
            if abs(red.lead[j]) == 1:
                clear[red.low[j]] = True
    groups = {}
    for k in degrees:
        rank_out = ranks.get(k + 1, 0)
        betti = C.dims[k] - ranks[k] - rank_out
        torsion = []
        if k + 1 in C.boundaries and not unit[k + 1]:
            torsion = [d for d in invariant_factors(C.boundary(k + 1)) if d > 1]
        groups[k] = HomologyGroup(betti, torsion)
    return HomologySummary(groups)


# ----------------------------------------------------------------------------
# exact dense helpers

def unimodular_inverse(m: IntegerMatrix) -> IntegerMatrix:
    """Inverse of a square integer matrix with determinant ±1."""
    if m.rows != m.cols:
        raise ValueError("not square")
    s, u, v = smith_normal_form(m)
    if s != IntegerMatrix.identity(m.rows):
        raise ConsistencyError("matrix is not unimodular")
    return v @ u


def kernel_basis(mat: IntegerMatrix, backend: str | None = None) -> IntegerMatrix:
    """Z-basis of ker(mat) as columns."""
    red = _reduce(mat, track=True, backend=backend)
    if red.unimodular_v:
        cols = [red.v_columns[j] for j in range(mat.cols) if red.low[j] < 0]
        return IntegerMatrix(mat.cols, len(cols), cols)
    s, _, v = smith_normal_form(mat)
    r = sum(1 for i in range(min(s.shape)) if s[i, i])
    return v.select_columns(range(r, mat.cols))


def homology_cycle_basis(C: IntegerChainComplex, k: int) -> IntegerMatrix:
    """Cycles whose classes form a basis of H_k modulo torsion (as columns)."""
    Z = kernel_basis(C.boundary(k))
    nxt = C.boundary(k + 1)
    if nxt.is_zero() or Z.cols == 0:
        return Z
    # coordinates of the boundaries in the cycle basis: Z X = ∂_{k+1}
    X = _solve_in_basis(Z, nxt)
    s, u, _ = smith_normal_form(X)
    rank = sum(1 for i in range(min(s.shape)) if s[i, i])
    u_inv = unimodular_inverse(u)
    return Z @ u_inv.select_columns(range(rank, u.rows))


def _solve_in_basis(Z: IntegerMatrix, B: IntegerMatrix) -> IntegerMatrix:
    """Integer X with Z X = B, for Z with saturated column span containing B."""
    s, u, v = smith_normal_form(Z)
    # Z = U^{-1} S V^{-1}; S has identity top block because the span is saturated
    r = Z.cols
    if any(s[i, i] != 1 for i in range(r)):
        raise ConsistencyError("cycle basis is not saturated")
    ub = (u @ B).to_dense()
    if any(v != 0 for row in ub[r:] for v in row):
        raise ConsistencyError("boundaries do not lie in the cycle span")
    top = IntegerMatrix.from_dense(ub[:r], cols=B.cols) if r else IntegerMatrix.zeros(0, B.cols)
    return v @ top


@dataclass
class CohomologyBasis:
    """Cocycles and dual cycles with ``cocycles.T @ cycles == I``."""

    degree: int
    cocycles: IntegerMatrix
    cycles: IntegerMatrix

    @property
    def size(self) -> int:
        return self.cocycles.cols

    def coordinates(self, cochain: IntegerMatrix) -> IntegerMatrix:
        """Coordinates of cocycle columns in this basis."""
        return (cochain.transpose() @ self.cycles).transpose()


def cohomology_basis(C: IntegerChainComplex, k: int, cocycles: IntegerMatrix | None = None) -> CohomologyBasis:
    """Basis of H^k modulo torsion.

    With ``cocycles`` given, they are checked to be closed and to pair
    unimodularly with the homology of C; otherwise representatives are
    computed from the dual complex.
    """
    cycles = homology_cycle_basis(C, k)
    if cocycles is None:
        cocycles = homology_cycle_basis(C.dual(), -k)
    else:
        delta = C.boundary(k + 1).transpose()
        if not (delta @ cocycles).is_zero():
            raise ConsistencyError("given cochains are not cocycles")
    pairing = cocycles.transpose() @ cycles
    if pairing.rows != pairing.cols:
        raise ConsistencyError(f"{cocycles.cols} cocycles against a rank {cycles.cols} homology group")
    dual_cycles = cycles @ unimodular_inverse(pairing)
    return CohomologyBasis(k, cocycles, dual_cycles)


def check_chain_map(f: Mapping[int, IntegerMatrix], C: IntegerChainComplex, D: IntegerChainComplex):
    for k in C.degrees:
        if k - 1 not in C.dims or k not in f or k - 1 not in f:
            continue
        lhs = D.boundary(k) @ f[k]
        rhs = f[k - 1] @ C.boundary(k)
        if lhs != rhs:
            raise NotChainMap(f"map does not commute with ∂ in degree {k}")


def induced_map_on_cohomology(f: Mapping[int, IntegerMatrix], C: IntegerChainComplex, D: IntegerChainComplex,
                              k: int, basis_C: CohomologyBasis | None = None,
                              basis_D: CohomologyBasis | None = None) -> IntegerMatrix:
    """Matrix of f^* : H^k(D) -> H^k(C) (modulo torsion).

    Column j holds the coordinates of f^*[φ_j] in ``basis_C`` where φ_j is
    the j-th cocycle of ``basis_D``.
    """
    check_chain_map(f, C, D)
    basis_C = basis_C or cohomology_basis(C, k)
    basis_D = basis_D or cohomology_basis(D, k)
    pulled = f[k].transpose() @ basis_D.cocycles
    return basis_C.coordinates(pulled)
