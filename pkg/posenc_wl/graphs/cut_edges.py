"""Bridges, edge-biconnected components and block cut-edge trees."""

import logging
from typing import Dict, List, Set

import networkx as nx

from posenc_wl.core.exceptions import GraphValidationError, NotATreeError
from posenc_wl.graphs.core import is_connected, to_networkx
from posenc_wl.models.graph import BlockCutEdgeTree, Edge, Graph

logger = logging.getLogger(__name__)


def bridges(g: Graph) -> Set[Edge]:
    """
    Cut edges of an undirected graph, as ``(u, v)`` with ``u < v``.

    Raises:
        GraphValidationError: for directed input
    """
    if g.directed:
        raise GraphValidationError("bridges are defined for undirected graphs only")
    return {(min(u, v), max(u, v)) for u, v in nx.bridges(to_networkx(g))}


def block_cut_edge_tree(g: Graph) -> BlockCutEdgeTree:
    """
    Contract every edge-biconnected component of a connected graph to a node.

    Components are ordered by their smallest vertex; tree edges follow the sorted bridges.

    Raises:
        GraphValidationError: for directed or disconnected input
    """
    if g.directed:
        raise GraphValidationError("block cut-edge trees are defined for undirected graphs only")
    if not is_connected(g):
        raise GraphValidationError("block cut-edge tree requires a connected graph", {"n": g.n})

    cut = sorted(bridges(g))
    residual = to_networkx(g)
    residual.remove_edges_from(cut)
    components = sorted(
        (frozenset(c) for c in nx.connected_components(residual)), key=lambda c: min(c)
    )
    index: Dict[int, int] = {v: i for i, comp in enumerate(components) for v in comp}
    tree_edges = tuple(
        (min(index[u], index[v]), max(index[u], index[v])) for u, v in cut
    )
    logger.debug(f"block cut-edge tree: {len(components)} components, {len(cut)} bridges")
    return BlockCutEdgeTree(components=tuple(components), tree_edges=tree_edges, bridges=tuple(cut))


def _as_tree(tree: BlockCutEdgeTree) -> nx.Graph:
    t = nx.Graph()
    t.add_nodes_from(range(tree.size))
    t.add_edges_from(tree.tree_edges)
    if tree.size == 0 or not nx.is_tree(t):
        raise NotATreeError(
            "input is not a tree",
            {"nodes": tree.size, "edges": len(tree.tree_edges)},
        )
    return t


def _ahu_code(t: nx.Graph, root: int) -> str:
    codes: Dict[int, str] = {}
    order: List[int] = []
    parent = {root: -1}
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        for w in t.neighbors(v):
            if w != parent[v]:
                parent[w] = v
                stack.append(w)
    for v in reversed(order):
        children = sorted(codes[w] for w in t.neighbors(v) if w != parent[v])
        codes[v] = "(" + "".join(children) + ")"
    return codes[root]


def tree_canonical_form(tree: BlockCutEdgeTree) -> str:
    """AHU canonical string of the unlabeled tree, rooted at its center(s)."""
    t = _as_tree(tree)
    return min(_ahu_code(t, c) for c in nx.center(t))


def tree_isomorphic(a: BlockCutEdgeTree, b: BlockCutEdgeTree) -> bool:
    """Unlabeled tree isomorphism by canonical-form comparison."""
    if a.size != b.size:
        _as_tree(a), _as_tree(b)
        return False
    return tree_canonical_form(a) == tree_canonical_form(b)
