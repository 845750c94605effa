"""Exact computations with free Lie rings, partition complexes, weighted trees
and decorated Lie brackets."""

from .errors import (
    BasepointInput,
    ConsistencyError,
    GroupClash,
    InvalidElement,
    InvalidInput,
    LabelClash,
    LieTowerError,
    NotAComplex,
    NotChainMap,
)
from .free_lie import LieElement, act, character, graft, lie_basis, parse_word, reduce, tensor_expand
from .grasper import DecoratedLieElement, FiniteGroupTable, decorated_rank, grasper_bracket
from .hilton_milnor import RankProfile, lyndon_words, tofib_first_rank, tofib_first_rank_with_group
from .homology import IntegerChainComplex, IntegerMatrix, homology, smith_normal_form
from .partitions import Partition, PartitionChain, build_nerve, partition_complex_chains
from .perms import Permutation
from .robinson import robinson_cocycle, robinson_map, verify_equivariance
from .trees import WeightedTree, caterpillar, graft_trees, t_matrix, ungraft

__version__ = "0.1.0"

__all__ = [
    "BasepointInput", "ConsistencyError", "GroupClash", "InvalidElement", "InvalidInput",
    "LabelClash", "LieTowerError", "NotAComplex", "NotChainMap",
    "LieElement", "act", "character", "graft", "lie_basis", "parse_word", "reduce", "tensor_expand",
    "DecoratedLieElement", "FiniteGroupTable", "decorated_rank", "grasper_bracket",
    "RankProfile", "lyndon_words", "tofib_first_rank", "tofib_first_rank_with_group",
    "IntegerChainComplex", "IntegerMatrix", "homology", "smith_normal_form",
    "Partition", "PartitionChain", "build_nerve", "partition_complex_chains",
    "Permutation",
    "robinson_cocycle", "robinson_map", "verify_equivariance",
    "WeightedTree", "caterpillar", "graft_trees", "t_matrix", "ungraft",
]
