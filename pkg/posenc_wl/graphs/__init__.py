"""Graph representation, generators, isomorphism oracle and cut-edge structure."""

from posenc_wl.graphs.core import (
    apply_permutation,
    as_featured,
    brute_force_isomorphic,
    featured,
    from_edge_list,
    random_permutation,
)
from posenc_wl.graphs.cut_edges import (
    block_cut_edge_tree,
    bridges,
    tree_canonical_form,
    tree_isomorphic,
)
from posenc_wl.graphs.generators import generate

__all__ = [
    "apply_permutation",
    "as_featured",
    "block_cut_edge_tree",
    "bridges",
    "brute_force_isomorphic",
    "featured",
    "from_edge_list",
    "generate",
    "random_permutation",
    "tree_canonical_form",
    "tree_isomorphic",
]
