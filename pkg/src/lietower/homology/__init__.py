from .complex import (
    CohomologyBasis,
    HomologyGroup,
    HomologySummary,
    IntegerChainComplex,
    check_chain_map,
    cohomology_basis,
    homology,
    homology_cycle_basis,
    induced_map_on_cohomology,
    kernel_basis,
    unimodular_inverse,
)
from .matrix import IntegerMatrix, determinant
from .snf import invariant_factors, smith_normal_form

__all__ = [
    "CohomologyBasis", "HomologyGroup", "HomologySummary", "IntegerChainComplex", "IntegerMatrix",
    "check_chain_map", "cohomology_basis", "determinant", "homology", "homology_cycle_basis",
    "induced_map_on_cohomology", "invariant_factors", "kernel_basis", "smith_normal_form",
    "unimodular_inverse",
]
