"""Brute-force searches over small graphs for witness pairs and counterexamples."""

import logging
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Tuple

import networkx as nx

from posenc_wl.core.exceptions import CorpusError
from posenc_wl.graphs.core import from_networkx, is_connected
from posenc_wl.models.graph import Edge, Graph
from posenc_wl.processors.encodings import rpe_resistance, rpe_spd
from posenc_wl.processors.refine import rpe_aug_wl
from posenc_wl.processors.tokens import tokenize

logger = logging.getLogger(__name__)

ATLAS_MAX_N = 7


def _atlas(n_max: int = ATLAS_MAX_N) -> Iterator[Graph]:
    """Connected atlas graphs in atlas order (ascending n, then edges, then degree sequence)."""
    for nxg in nx.graph_atlas_g():
        if nxg.number_of_nodes() == 0 or nxg.number_of_nodes() > n_max:
            continue
        g = from_networkx(nxg)
        if is_connected(g):
            yield g


def _fallback_families() -> Iterator[Graph]:
    for n in (8, 10, 12):
        for d in (3, 4):
            for seed in range(20):
                yield from_networkx(nx.random_regular_graph(d, n, seed=seed))
    for n in range(8, 13):
        for seed in range(50):
            yield from_networkx(nx.gnp_random_graph(n, 0.35, seed=seed))


def _separated_pair(graphs: Iterator[Graph]) -> Optional[Tuple[Graph, Graph]]:
    """First pair (by n, then enumeration order) that SPD-WL merges and RD-WL separates."""
    groups: Dict[Tuple[int, Tuple[str, ...]], List[Graph]] = defaultdict(list)
    by_n: Dict[int, List[Tuple[int, Tuple[str, ...]]]] = defaultdict(list)
    for g in graphs:
        if not is_connected(g):
            continue
        key = (g.n, tuple(rpe_aug_wl(g, rpe_spd(g)).histograms()))
        if not groups[key]:
            by_n[g.n].append(key)
        groups[key].append(g)

    for n in sorted(by_n):
        for key in by_n[n]:
            members = groups[key]
            if len(members) < 2:
                continue
            rd: Dict[Tuple[str, ...], Graph] = {}
            for g in members:
                h = tuple(rpe_aug_wl(g, rpe_resistance(g)).histograms())
                if rd and h not in rd:
                    return next(iter(rd.values())), g
                rd.setdefault(h, g)
    return None


@lru_cache(maxsize=1)
def find_cutvertex_pair() -> Tuple[Graph, Graph]:
    """
    Smallest connected pair that SPD-WL cannot separate but RD-WL can.

    Searches every connected graph on at most seven vertices, then seeded random regular
    and G(n, p) samples on 8 to 12 vertices. The result is frozen as
    :func:`posenc_wl.graphs.generators.cutvertex_pair`; this search regenerates it.

    Raises:
        CorpusError: if no such pair is found
    """
    found = _separated_pair(_atlas())
    if found is None:
        logger.info("no atlas witness; searching random families")
        found = _separated_pair(_fallback_families())
    if found is None:
        raise CorpusError("no pair separated by RD-WL but not by SPD-WL was found")
    logger.info(f"cutvertex pair found on n={found[0].n}")
    return found


@dataclass(frozen=True)
class RdCollision:
    """An edge and a non-edge of one graph carrying the same resistance distance."""

    graph: Graph
    edge: Edge
    non_edge: Edge
    value: float


@lru_cache(maxsize=1)
def find_rd_not_combinatorial(n_max: int = ATLAS_MAX_N) -> Optional[RdCollision]:
    """First connected atlas graph where an edge and a non-edge share an RD token."""
    for g in _atlas(n_max):
        psi = rpe_resistance(g)
        toks = tokenize(psi)[:, :, 0]
        edge_tokens = {int(toks[u, v]): (u, v) for u, v in g.unordered_edges()}
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if g.has_edge(u, v):
                    continue
                hit = edge_tokens.get(int(toks[u, v]))
                if hit is not None:
                    return RdCollision(g, hit, (u, v), float(psi.values[u, v, 0]))
    return None
