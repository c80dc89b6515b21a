"""Immutable graph domain types."""

from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, List, Tuple

import numpy as np

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Simple unweighted (di)graph on vertices ``0..n-1``.

    ``edges`` holds ordered pairs; an undirected graph stores both orientations.
    Use :func:`posenc_wl.graphs.core.from_edge_list` to build validated instances.
    """

    n: int
    directed: bool
    edges: Tuple[Edge, ...]

    @property
    def edge_count(self) -> int:
        """Number of edges, counting unordered pairs for undirected graphs."""
        return len(self.edges) if self.directed else len(self.edges) // 2

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Integer adjacency matrix with ``A[u, v] = 1`` iff ``(u, v)`` is an edge."""
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            a[u, v] = 1
        a.setflags(write=False)
        return a

    @cached_property
    def out_neighbors(self) -> Tuple[Tuple[int, ...], ...]:
        nbrs: List[List[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @cached_property
    def in_neighbors(self) -> Tuple[Tuple[int, ...], ...]:
        nbrs: List[List[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @property
    def degrees(self) -> np.ndarray:
        """Out-degrees (equal to degrees for undirected graphs)."""
        return self.adjacency.sum(axis=1)

    def unordered_edges(self) -> List[Edge]:
        """Sorted list of edges with ``u < v`` (undirected graphs only)."""
        return sorted((u, v) for u, v in self.edges if u < v)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u, v])


@dataclass(frozen=True, eq=False)
class FeaturedGraph:
    """A graph with an ``n x d`` real feature matrix.

    ``d == 0`` means unfeatured, which every engine treats as the constant feature 1.
    """

    graph: Graph
    features: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def d(self) -> int:
        return int(self.features.shape[1])

    @property
    def is_featured(self) -> bool:
        return self.d > 0

    def effective_features(self) -> np.ndarray:
        """Feature rows with the unfeatured case mapped to a constant column of ones."""
        if self.d == 0:
            return np.ones((self.n, 1), dtype=float)
        return self.features

    def without_features(self) -> "FeaturedGraph":
        return FeaturedGraph(self.graph, np.zeros((self.n, 0), dtype=float))


@dataclass(frozen=True)
class Permutation:
    """A bijection on ``0..n-1``; ``mapping[v]`` is the image of ``v``."""

    mapping: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, v: int) -> int:
        return self.mapping[v]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for v, image in enumerate(self.mapping):
            inv[image] = v
        return Permutation(tuple(inv))

    def matrix(self) -> np.ndarray:
        """Permutation matrix ``P`` with ``P[p(v), v] = 1`` so that ``(P x)[p(v)] = x[v]``."""
        p = np.zeros((self.n, self.n), dtype=float)
        for v, image in enumerate(self.mapping):
            p[image, v] = 1.0
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))


@dataclass(frozen=True)
class BlockCutEdgeTree:
    """Tree of edge-biconnected components joined by bridges.

    ``bridges[i]`` is the graph edge realizing ``tree_edges[i]``.
    """

    components: Tuple[FrozenSet[int], ...]
    tree_edges: Tuple[Edge, ...]
    bridges: Tuple[Edge, ...] = ()

    @property
    def size(self) -> int:
        return len(self.components)

    def adjacency_list(self) -> List[List[int]]:
        adj: List[List[int]] = [[] for _ in range(self.size)]
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj
