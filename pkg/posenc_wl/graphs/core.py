"""Graph construction, permutations and the brute-force isomorphism oracle."""

import logging
from collections import Counter
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from posenc_wl.core.config import get_settings
from posenc_wl.core.exceptions import GraphValidationError, OracleScaleExceeded
from posenc_wl.models.graph import Edge, FeaturedGraph, Graph, Permutation

logger = logging.getLogger(__name__)


def from_edge_list(n: int, directed: bool, pairs: Iterable[Sequence[int]]) -> Graph:
    """
    Build a canonical graph from an edge list.

    Args:
        n: Vertex count
        directed: Whether ``(u, v)`` and ``(v, u)`` are distinct edges
        pairs: Edges as index pairs

    Returns:
        Graph with sorted, deduplicated (and for undirected input symmetrized) edges

    Raises:
        GraphValidationError: on negative ``n``, self-loops or out-of-range indices
    """
    if n < 0:
        raise GraphValidationError("vertex count must be nonnegative", {"n": n})

    edges = set()
    for pair in pairs:
        if len(pair) != 2:
            raise GraphValidationError("edges must be pairs", {"edge": list(pair)})
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphValidationError(
                f"edge ({u}, {v}) has an index out of range for n={n}", {"edge": [u, v], "n": n}
            )
        if u == v:
            raise GraphValidationError(f"self-loop at vertex {u}", {"edge": [u, v]})
        edges.add((u, v))
        if not directed:
            edges.add((v, u))

    return Graph(n=n, directed=directed, edges=tuple(sorted(edges)))


def featured(graph: Graph, features: Optional[Sequence[Sequence[float]]] = None) -> FeaturedGraph:
    """
    Attach features to a graph.

    Args:
        graph: Underlying graph
        features: ``n`` rows of equal length, a flat list of ``n`` scalars, or None for unfeatured

    Returns:
        FeaturedGraph

    Raises:
        GraphValidationError: on a row-count mismatch or non-finite entries
    """
    if features is None:
        matrix = np.zeros((graph.n, 0), dtype=float)
    else:
        matrix = np.asarray(features, dtype=float)
        if matrix.ndim == 1:
            matrix = matrix.reshape(-1, 1)
        if matrix.ndim != 2:
            raise GraphValidationError("features must be a matrix", {"shape": list(matrix.shape)})
    if matrix.shape[0] != graph.n:
        raise GraphValidationError(
            "feature row count must equal the vertex count",
            {"rows": int(matrix.shape[0]), "n": graph.n},
        )
    if not np.all(np.isfinite(matrix)):
        raise GraphValidationError("features must be finite")
    matrix = matrix.copy()
    matrix.setflags(write=False)
    return FeaturedGraph(graph=graph, features=matrix)


def as_featured(g) -> FeaturedGraph:
    """Accept a Graph or FeaturedGraph and return a FeaturedGraph."""
    if isinstance(g, FeaturedGraph):
        return g
    return featured(g)


def apply_permutation(g, p: Permutation):
    """
    Relabel a (featured) graph: edge ``(u, v)`` becomes ``(p(u), p(v))`` and feature row
    ``v`` moves to row ``p(v)``.

    Returns the same kind (Graph or FeaturedGraph) that was passed in.
    """
    graph = g.graph if isinstance(g, FeaturedGraph) else g
    if p.n != graph.n:
        raise GraphValidationError(
            "permutation size does not match the graph", {"permutation_n": p.n, "n": graph.n}
        )
    permuted = from_edge_list(graph.n, graph.directed, [(p(u), p(v)) for u, v in graph.edges])
    if not isinstance(g, FeaturedGraph):
        return permuted
    rows = np.zeros_like(g.features)
    for v in range(graph.n):
        rows[p(v)] = g.features[v]
    return featured(permuted, rows if g.d else None)


def random_permutation(n: int, seed: int) -> Permutation:
    """Seeded uniformly random permutation of ``0..n-1``."""
    rng = np.random.default_rng(seed)
    return Permutation(tuple(int(x) for x in rng.permutation(n)))


def permute_rpe_values(values: np.ndarray, p: Permutation) -> np.ndarray:
    """Move entry ``(u, v)`` of an ``n x n (x k)`` array to ``(p(u), p(v))``."""
    inv = np.asarray(p.inverse().mapping, dtype=int)
    return values[np.ix_(inv, inv)]


def permute_rows(values: np.ndarray, p: Permutation) -> np.ndarray:
    """Move row ``v`` of an array to row ``p(v)``."""
    inv = np.asarray(p.inverse().mapping, dtype=int)
    return values[inv]


def to_networkx(graph: Graph) -> nx.Graph:
    """Convert to a networkx (Di)Graph with all vertices present."""
    nxg = nx.DiGraph() if graph.directed else nx.Graph()
    nxg.add_nodes_from(range(graph.n))
    nxg.add_edges_from(graph.edges)
    return nxg


def from_networkx(nxg: nx.Graph) -> Graph:
    """Convert a networkx graph, relabelling nodes to ``0..n-1`` in sorted order."""
    nodes = sorted(nxg.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return from_edge_list(
        len(nodes), nxg.is_directed(), [(index[u], index[v]) for u, v in nxg.edges()]
    )


def component_count(graph: Graph, removed: Optional[Edge] = None) -> int:
    """Number of (weakly) connected components, optionally after deleting one edge."""
    nxg = to_networkx(graph).to_undirected()
    if removed is not None:
        nxg.remove_edge(*removed)
    return nx.number_connected_components(nxg) if graph.n else 0


def is_connected(graph: Graph) -> bool:
    return graph.n > 0 and component_count(graph) == 1


def _feature_keys(g: FeaturedGraph) -> List[Tuple[float, ...]]:
    return [tuple(float(x) + 0.0 for x in row) for row in g.effective_features()]


def brute_force_isomorphic(a, b, limit: Optional[int] = None) -> bool:
    """
    Decide feature isomorphism by backtracking over all bijections.

    Candidates for each vertex are pruned by (in/out degree, feature row) classes,
    and partial maps are checked edge by edge.

    Args:
        a: First graph (Graph or FeaturedGraph)
        b: Second graph
        limit: Oracle scale limit, defaults to the ORACLE_MAX_N setting

    Returns:
        True iff some permutation maps edges to edges and feature rows to equal rows

    Raises:
        OracleScaleExceeded: if ``n`` is above the limit
    """
    a, b = as_featured(a), as_featured(b)
    limit = get_settings().ORACLE_MAX_N if limit is None else limit
    if max(a.n, b.n) > limit:
        raise OracleScaleExceeded(
            f"oracle scale exceeded: n={max(a.n, b.n)} > {limit}", {"limit": limit}
        )
    ga, gb = a.graph, b.graph
    if ga.n != gb.n or ga.directed != gb.directed or len(ga.edges) != len(gb.edges):
        return False

    fa, fb = _feature_keys(a), _feature_keys(b)
    adj_a, adj_b = ga.adjacency, gb.adjacency
    key_a = [
        (int(adj_a[v].sum()), int(adj_a[:, v].sum()), fa[v]) for v in range(ga.n)
    ]
    key_b = [
        (int(adj_b[v].sum()), int(adj_b[:, v].sum()), fb[v]) for v in range(gb.n)
    ]
    if Counter(key_a) != Counter(key_b):
        return False

    candidates: Dict[int, List[int]] = {
        v: [w for w in range(gb.n) if key_b[w] == key_a[v]] for v in range(ga.n)
    }
    # most constrained vertices first
    order = sorted(range(ga.n), key=lambda v: (len(candidates[v]), v))
    mapping: Dict[int, int] = {}
    used = [False] * gb.n

    def consistent(v: int, w: int) -> bool:
        for u, x in mapping.items():
            if adj_a[v, u] != adj_b[w, x] or adj_a[u, v] != adj_b[x, w]:
                return False
        return True

    def extend(depth: int) -> bool:
        if depth == len(order):
            return True
        v = order[depth]
        for w in candidates[v]:
            if used[w] or not consistent(v, w):
                continue
            mapping[v] = w
            used[w] = True
            if extend(depth + 1):
                return True
            del mapping[v]
            used[w] = False
        return False

    found = extend(0)
    logger.debug(f"brute-force oracle on n={ga.n}: {'isomorphic' if found else 'not isomorphic'}")
    return found
