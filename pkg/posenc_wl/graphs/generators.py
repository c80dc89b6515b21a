"""Deterministic generators for the graph families used by the corpora."""

import logging
from typing import Any, Callable, Dict, Tuple, Union

import networkx as nx

from posenc_wl.core.exceptions import GraphGenerationError
from posenc_wl.graphs.core import featured, from_edge_list, from_networkx
from posenc_wl.models.graph import FeaturedGraph, Graph

logger = logging.getLogger(__name__)

Generated = Union[Graph, FeaturedGraph, Tuple[Any, Any]]


def _require(condition: bool, message: str, **details: Any) -> None:
    if not condition:
        raise GraphGenerationError(message, details)


def cycle(n: int) -> Graph:
    _require(n >= 3, "a cycle needs at least 3 vertices", n=n)
    return from_networkx(nx.cycle_graph(n))


def path(n: int) -> Graph:
    _require(n >= 1, "a path needs at least 1 vertex", n=n)
    return from_networkx(nx.path_graph(n))


def complete(n: int) -> Graph:
    _require(n >= 1, "a complete graph needs at least 1 vertex", n=n)
    return from_networkx(nx.complete_graph(n))


def star(n: int) -> Graph:
    """Star with ``n`` leaves; vertex 0 is the center."""
    _require(n >= 1, "a star needs at least one leaf", n=n)
    return from_networkx(nx.star_graph(n))


def csl(n: int, s: int) -> Graph:
    """Circular skip link graph: cycle edges ``{i, i±1}`` plus chords ``{i, i±s}``."""
    _require(n >= 5, "CSL needs at least 5 vertices", n=n)
    _require(
        1 < s < n - 1,
        "CSL skip must avoid 0, 1 and n-1",
        n=n,
        s=s,
    )
    return from_networkx(nx.circulant_graph(n, [1, s]))


def gnp(n: int, p: float, seed: int) -> Graph:
    _require(n >= 0 and 0.0 <= p <= 1.0, "invalid G(n, p) parameters", n=n, p=p)
    return from_networkx(nx.gnp_random_graph(n, p, seed=seed))


def gnp_directed(n: int, p: float, seed: int) -> Graph:
    _require(n >= 0 and 0.0 <= p <= 1.0, "invalid G(n, p) parameters", n=n, p=p)
    return from_networkx(nx.gnp_random_graph(n, p, seed=seed, directed=True))


def cycle_union(k: int, m: int) -> Graph:
    """``k`` disjoint copies of the ``m``-cycle (e.g. ``cycle_union(2, 3)`` is 2×C3)."""
    _require(k >= 1 and m >= 3, "invalid cycle union", k=k, m=m)
    edges = []
    for c in range(k):
        base = c * m
        edges.extend((base + i, base + (i + 1) % m) for i in range(m))
    return from_edge_list(k * m, False, edges)


def triangle_pendant() -> Graph:
    """Triangle ``0-1-2`` with a pendant vertex 3 attached to 0."""
    return from_edge_list(4, False, [(0, 1), (1, 2), (2, 0), (0, 3)])


def c4_pendant() -> Graph:
    """4-cycle ``0-1-2-3`` with pendant 4 on vertex 0.

    The non-edge ``{1, 3}`` and the bridge ``{0, 4}`` both have resistance 1.
    """
    return from_edge_list(5, False, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])


def shrikhande() -> Graph:
    """Cayley graph of Z4 x Z4 with connection set ±{(1,0), (0,1), (1,1)}."""
    steps = [(1, 0), (0, 1), (1, 1)]
    edges = []
    for i in range(4):
        for j in range(4):
            for di, dj in steps:
                for sign in (1, -1):
                    x, y = (i + sign * di) % 4, (j + sign * dj) % 4
                    edges.append((4 * i + j, 4 * x + y))
    return from_edge_list(16, False, edges)


def rook4x4() -> Graph:
    """4x4 rook's graph: cells adjacent iff they share a row or a column."""
    edges = []
    for a in range(16):
        for b in range(a + 1, 16):
            if a // 4 == b // 4 or a % 4 == b % 4:
                edges.append((a, b))
    return from_edge_list(16, False, edges)


def directed_cycle(n: int) -> Graph:
    _require(n >= 2, "a directed cycle needs at least 2 vertices", n=n)
    return from_edge_list(n, True, [(i, (i + 1) % n) for i in range(n)])


def transitive_tournament(n: int) -> Graph:
    return from_edge_list(n, True, [(i, j) for i in range(n) for j in range(i + 1, n)])


def fig_a_pair() -> Tuple[Graph, Graph]:
    """C4 against triangle-plus-pendant: equal raw adjacency multisets, different A-WL."""
    return cycle(4), triangle_pendant()


def featured_c4_pair() -> Tuple[FeaturedGraph, FeaturedGraph]:
    """C4 with features [1,2,3,4] against C4 with features [1,3,2,4]."""
    c4 = cycle(4)
    return featured(c4, [1.0, 2.0, 3.0, 4.0]), featured(c4, [1.0, 3.0, 2.0, 4.0])


# Atlas graphs 152 and 154, as returned by harness.search.find_cutvertex_pair.
CUTVERTEX_EDGES_A = ((0, 1), (0, 5), (1, 2), (1, 5), (2, 3), (2, 4), (3, 4), (4, 5))
CUTVERTEX_EDGES_B = ((0, 1), (0, 5), (1, 2), (1, 4), (2, 3), (2, 5), (3, 4), (4, 5))


def cutvertex_pair() -> Tuple[Graph, Graph]:
    """
    Smallest pair separated by RD-WL but not by SPD-WL.

    The triangular prism with one rung removed against ``K_{3,3}`` minus an edge; both have
    six vertices, eight edges and degree sequence 2, 2, 3, 3, 3, 3.
    """
    return from_edge_list(6, False, CUTVERTEX_EDGES_A), from_edge_list(6, False, CUTVERTEX_EDGES_B)


FAMILIES: Dict[str, Callable[..., Generated]] = {
    "cycle": cycle,
    "path": path,
    "complete": complete,
    "star": star,
    "csl": csl,
    "gnp": gnp,
    "gnp_directed": gnp_directed,
    "cycle_union": cycle_union,
    "triangle_pendant": triangle_pendant,
    "c4_pendant": c4_pendant,
    "shrikhande": shrikhande,
    "rook4x4": rook4x4,
    "directed_cycle": directed_cycle,
    "transitive_tournament": transitive_tournament,
    "fig_a_pair": fig_a_pair,
    "featured_c4_pair": featured_c4_pair,
    "cutvertex_pair": cutvertex_pair,
}


def generate(family: str, **params: Any) -> Generated:
    """
    Generate a member of a named family.

    Args:
        family: One of :data:`FAMILIES`
        **params: Family parameters (e.g. ``n``, ``s``, ``p``, ``seed``)

    Returns:
        Graph, FeaturedGraph, or a pair of them

    Raises:
        GraphGenerationError: on an unknown family or invalid parameters
    """
    try:
        builder = FAMILIES[family]
    except KeyError:
        raise GraphGenerationError(
            f"unknown graph family: {family}", {"known": sorted(FAMILIES)}
        ) from None
    try:
        result = builder(**params)
    except TypeError as e:
        raise GraphGenerationError(
            f"invalid parameters for family {family}: {e}", {"params": params}
        ) from e
    logger.debug(f"generated family={family} params={params}")
    return result
