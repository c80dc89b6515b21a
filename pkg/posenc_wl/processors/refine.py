"""Color refinement engines: classical WL, psi-WL and psi-2-WL.

Colors are content-addressed (see :mod:`posenc_wl.utils.hashing`), so colorings of
different graphs, runs and machines are directly comparable.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Any, Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple, Union

from posenc_wl.core.config import get_settings
from posenc_wl.core.exceptions import EncodingError, RefinementError
from posenc_wl.graphs.core import as_featured
from posenc_wl.models.graph import FeaturedGraph, Graph
from posenc_wl.models.schemas import TestKind, Verdict
from posenc_wl.models.tensors import ApeMatrix, RpeTensor
from posenc_wl.processors.tokens import feature_tokens, pair_bytes, row_bytes, tokenize
from posenc_wl.utils.hashing import color_id, histogram_digest, multiset_bytes

logger = logging.getLogger(__name__)

ColorId = bytes
GraphLike = Union[Graph, FeaturedGraph]


def partition_signature(colors: Sequence[ColorId]) -> Tuple[int, ...]:
    """Colors relabelled by first occurrence; equal signatures mean equal partitions."""
    index: Dict[ColorId, int] = {}
    return tuple(index.setdefault(c, len(index)) for c in colors)


@dataclass(frozen=True)
class ColorHistory:
    """Per-round node colorings, from round 0 through ``stable_round``."""

    rounds: Tuple[Tuple[ColorId, ...], ...]
    stable_round: int

    @property
    def n(self) -> int:
        return len(self.rounds[0])

    @property
    def final(self) -> Tuple[ColorId, ...]:
        return self.rounds[-1]

    def class_count(self, t: int) -> int:
        return len(set(self.rounds[t]))

    def partition(self, t: int) -> Tuple[int, ...]:
        return partition_signature(self.rounds[t])

    def histogram(self, t: int) -> str:
        return histogram_digest(self.rounds[t])

    def histograms(self) -> List[str]:
        return [histogram_digest(r) for r in self.rounds]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "node",
            "n": self.n,
            "stable_round": self.stable_round,
            "rounds": [[c.hex() for c in r] for r in self.rounds],
            "histograms": self.histograms(),
        }


@dataclass(frozen=True)
class PairColorHistory:
    """Per-round colorings of ordered node pairs, stored row-major (index ``u * n + v``)."""

    n: int
    rounds: Tuple[Tuple[ColorId, ...], ...]
    stable_round: int

    @property
    def final(self) -> Tuple[ColorId, ...]:
        return self.rounds[-1]

    def color(self, t: int, u: int, v: int) -> ColorId:
        return self.rounds[t][u * self.n + v]

    def class_count(self, t: int) -> int:
        return len(set(self.rounds[t]))

    def partition(self, t: int) -> Tuple[int, ...]:
        return partition_signature(self.rounds[t])

    def histogram(self, t: int) -> str:
        return histogram_digest(self.rounds[t])

    def histograms(self) -> List[str]:
        return [histogram_digest(r) for r in self.rounds]

    def to_dict(self) -> Dict[str, Any]:
        n = self.n
        return {
            "kind": "pair",
            "n": n,
            "stable_round": self.stable_round,
            "rounds": [
                [[r[u * n + v].hex() for v in range(n)] for u in range(n)] for r in self.rounds
            ],
            "histograms": self.histograms(),
        }


def _run_to_stability(
    initial: List[ColorId], step: Callable[[List[ColorId]], List[ColorId]], bound: int, engine: str
) -> Tuple[Tuple[ColorId, ...], ...]:
    rounds = [tuple(initial)]
    if not initial:
        return tuple(rounds)
    while True:
        nxt = step(list(rounds[-1]))
        rounds.append(tuple(nxt))
        if partition_signature(nxt) == partition_signature(rounds[-2]):
            break
        if len(rounds) - 1 > bound:
            # Each non-final round strictly splits a class, so this is unreachable.
            raise RefinementError(f"{engine} did not stabilize", {"rounds": len(rounds) - 1})
    logger.debug(f"{engine} stabilized after {len(rounds) - 1} rounds on {len(initial)} items")
    return tuple(rounds)


def _initial_node_colors(g: FeaturedGraph) -> List[ColorId]:
    return [color_id(b"node-init", row) for row in row_bytes(feature_tokens(g))]


def wl_classical(g: GraphLike) -> ColorHistory:
    """
    Classical WL over neighbor multisets.

    Directed graphs aggregate out- and in-neighbors as two separate multisets.
    """
    fg = as_featured(g)
    graph = fg.graph
    out_nbrs, in_nbrs = graph.out_neighbors, graph.in_neighbors

    def step(colors: List[ColorId]) -> List[ColorId]:
        new = []
        for v in range(graph.n):
            parts = [colors[v], multiset_bytes(colors[u] for u in out_nbrs[v])]
            if graph.directed:
                parts.append(multiset_bytes(colors[u] for u in in_nbrs[v]))
            new.append(color_id(b"wl", *parts))
        return new

    rounds = _run_to_stability(_initial_node_colors(fg), step, max(graph.n, 1), "wl")
    return ColorHistory(rounds=rounds, stable_round=len(rounds) - 1)


def _check_size(g: FeaturedGraph, psi: RpeTensor) -> None:
    if psi.n != g.n:
        raise RefinementError("encoding size does not match the graph", {"psi_n": psi.n, "n": g.n})


def rpe_aug_wl(g: GraphLike, psi: RpeTensor) -> ColorHistory:
    """
    psi-WL: ``chi'(v) = hash(chi(v), {{(chi(u), psi(v, u)) : u in V}})``.

    The multiset ranges over all nodes, not just neighbors; members are ordered by
    color bytes, then token bytes.
    """
    fg = as_featured(g)
    _check_size(fg, psi)
    toks = pair_bytes(tokenize(psi))
    n = fg.n

    def step(colors: List[ColorId]) -> List[ColorId]:
        # ColorIds have a fixed width, so color + token concatenation is unambiguous.
        return [
            color_id(b"psi-wl", colors[v], multiset_bytes(colors[u] + toks[v][u] for u in range(n)))
            for v in range(n)
        ]

    rounds = _run_to_stability(_initial_node_colors(fg), step, max(n, 1), "psi-wl")
    return ColorHistory(rounds=rounds, stable_round=len(rounds) - 1)


def rpe_2_wl(g: GraphLike, psi: RpeTensor) -> PairColorHistory:
    """
    psi-2-WL over ordered pairs.

    Round 0 colors ``(u, v)`` by ``(X(u), X(v), psi(u, v))``; each round hashes the pair's
    own color with the multisets of its row ``{{chi(u, w)}}`` and column ``{{chi(w, v)}}``.

    Raises:
        RefinementError: on a size mismatch or when ``n`` exceeds ``TWO_WL_MAX_N``
    """
    fg = as_featured(g)
    _check_size(fg, psi)
    n = fg.n
    cap = get_settings().TWO_WL_MAX_N
    if n > cap:
        raise RefinementError(f"psi-2-WL is capped at n={cap}", {"n": n, "cap": cap})
    feats = row_bytes(feature_tokens(fg))
    toks = pair_bytes(tokenize(psi))
    initial = [color_id(b"pair-init", feats[u], feats[v], toks[u][v]) for u in range(n) for v in range(n)]

    def step(colors: List[ColorId]) -> List[ColorId]:
        rows = [color_id(b"row", multiset_bytes(colors[u * n : (u + 1) * n])) for u in range(n)]
        cols = [color_id(b"col", multiset_bytes(colors[v::n])) for v in range(n)]
        return [
            color_id(b"psi-2wl", colors[u * n + v], rows[u], cols[v]) for u in range(n) for v in range(n)
        ]

    rounds = _run_to_stability(initial, step, max(n * n, 1), "psi-2wl")
    return PairColorHistory(n=n, rounds=rounds, stable_round=len(rounds) - 1)


def history_verdict(
    test: TestKind,
    a: Union[ColorHistory, PairColorHistory],
    b: Union[ColorHistory, PairColorHistory],
    name: Optional[str],
) -> Verdict:
    ha, hb = a.histograms(), b.histograms()
    # Equal histograms through the earlier stable round force equal stable rounds,
    # and stable colorings reproduce themselves from then on.
    separating = next((t for t, (x, y) in enumerate(zip(ha, hb)) if x != y), None)
    return Verdict(
        test=test,
        encoding=name,
        distinguishable=separating is not None,
        separating_round=separating,
        stable_round_a=a.stable_round,
        stable_round_b=b.stable_round,
        histograms_a=ha,
        histograms_b=hb,
    )


def _raw_verdict(test: TestKind, items_a: List[bytes], items_b: List[bytes], name: Optional[str]) -> Verdict:
    da, db = histogram_digest(items_a), histogram_digest(items_b)
    distinguishable = da != db
    return Verdict(
        test=test,
        encoding=name,
        distinguishable=distinguishable,
        separating_round=0 if distinguishable else None,
        histograms_a=[da],
        histograms_b=[db],
    )


def _ape_rows(g: FeaturedGraph, phi: ApeMatrix) -> List[bytes]:
    feats = row_bytes(feature_tokens(g))
    toks = row_bytes(tokenize(phi))
    return [f + b"|" + t for f, t in zip(feats, toks)]


def _rpe_triples(g: FeaturedGraph, psi: RpeTensor) -> List[bytes]:
    feats = row_bytes(feature_tokens(g))
    toks = pair_bytes(tokenize(psi))
    n = g.n
    return [feats[u] + b"|" + feats[v] + b"|" + toks[u][v] for u in range(n) for v in range(n)]


def compare(
    a: GraphLike,
    b: GraphLike,
    test: Union[TestKind, str],
    enc_a: Optional[Union[RpeTensor, ApeMatrix]] = None,
    enc_b: Optional[Union[RpeTensor, ApeMatrix]] = None,
    name: Optional[str] = None,
) -> Verdict:
    """
    Decide whether two graphs are indistinguishable under a test.

    Args:
        a, b: Graphs to compare
        test: ``raw_ape``, ``raw_rpe``, ``psi_wl``, ``psi_2wl`` or ``classical``
        enc_a, enc_b: The per-graph encodings (not used by ``classical``)
        name: Encoding name recorded in the verdict

    Returns:
        Verdict; raw tests separate at round 0

    Raises:
        EncodingError: if encodings are missing or have incompatible channel counts
    """
    test = TestKind(test)
    fa, fb = as_featured(a), as_featured(b)
    if test == TestKind.CLASSICAL:
        return history_verdict(test, wl_classical(fa), wl_classical(fb), name)

    if enc_a is None or enc_b is None:
        raise EncodingError(f"test {test.value} needs an encoding for both graphs")
    name = name or enc_a.name

    if test == TestKind.RAW_APE:
        if not isinstance(enc_a, ApeMatrix) or not isinstance(enc_b, ApeMatrix):
            raise EncodingError("raw_ape needs absolute encodings")
        if enc_a.l != enc_b.l:
            raise EncodingError("APE dimensions differ", {"l_a": enc_a.l, "l_b": enc_b.l})
        return _raw_verdict(test, _ape_rows(fa, enc_a), _ape_rows(fb, enc_b), name)

    if not isinstance(enc_a, RpeTensor) or not isinstance(enc_b, RpeTensor):
        raise EncodingError(f"{test.value} needs relative encodings")
    if enc_a.k != enc_b.k:
        raise EncodingError("RPE channel counts differ", {"k_a": enc_a.k, "k_b": enc_b.k})

    if test == TestKind.RAW_RPE:
        return _raw_verdict(test, _rpe_triples(fa, enc_a), _rpe_triples(fb, enc_b), name)
    if test == TestKind.PSI_WL:
        return history_verdict(test, rpe_aug_wl(fa, enc_a), rpe_aug_wl(fb, enc_b), name)
    return history_verdict(test, rpe_2_wl(fa, enc_a), rpe_2_wl(fb, enc_b), name)


def multiset_square(items: Iterable[Hashable]) -> Counter:
    """The multiset ``{{(x, y) : x, y in S}}`` of ordered pairs of a multiset ``S``."""
    members = list(items)
    return Counter((x, y) for x in members for y in members)


def multiset_square_equal(a: Iterable[Hashable], b: Iterable[Hashable]) -> bool:
    """Compare two multisets through their squares (equal squares imply equal multisets)."""
    return multiset_square(a) == multiset_square(b)


def _token_status_conflict(
    items: Iterable[Tuple[Graph, RpeTensor]], status: Callable[[Graph, int, int], Hashable]
) -> bool:
    seen: Dict[bytes, Hashable] = {}
    for graph, psi in items:
        toks = pair_bytes(tokenize(psi))
        for u in range(graph.n):
            for v in range(graph.n):
                s = status(graph, u, v)
                if seen.setdefault(toks[u][v], s) != s:
                    return True
    return False


def is_combinatorially_aware(items: Iterable[Tuple[Graph, RpeTensor]]) -> bool:
    """True when no token value occurs both on an edge and on a non-edge across ``items``."""
    return not _token_status_conflict(items, lambda g, u, v: g.has_edge(u, v))


def is_diagonally_aware(items: Iterable[Tuple[Graph, RpeTensor]]) -> bool:
    """True when no token value occurs both on and off the diagonal across ``items``."""
    return not _token_status_conflict(items, lambda g, u, v: u == v)
