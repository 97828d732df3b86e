"""Exact-arithmetic free Lie, preLie and graph algebras with their
configuration pairing, dual cobrackets, Lie-coalgebra kernels and the
arity-graded composition structures."""

from .terms import (
    Combo,
    LieExpr,
    OrientedGraph,
    RootedTree,
    Word,
    br,
    canonical_key,
    canonicalize_graph,
    combo,
    graph,
    ladder,
    leaf,
    left_normed,
    rank_of_combos,
    right_normed,
    tensor,
    tensor_swap,
)
from .freealg import (
    bracket,
    concat,
    graph_product,
    is_lyndon,
    lyndon_words,
    prelie_product,
    product,
    shuffle,
)
from .envelope import (
    expand,
    expand_assoc,
    expand_graph,
    expand_prelie,
    i_graph,
    i_prelie,
    q_graph,
    q_prelie,
)
from .cobracket import cobracket_assoc, cobracket_graph, cobracket_prelie
from .pairing import (
    pair,
    pair_expand,
    pair_recursive,
    pair_right_normed,
    pair_sigma,
    root_of,
    sigma_pair_table,
    sign_of,
)
from .liedual import (
    graft_below_label,
    graft_onto_vertex,
    kernel_generators,
    kernel_member,
    lie_dual_rank,
    long_graph,
    long_graph_reduce,
    spanning_brackets,
)
from .operads import OperadElement, binary_generated_dim, compose, dims

__all__ = [name for name in dir() if not name.startswith("_")]
