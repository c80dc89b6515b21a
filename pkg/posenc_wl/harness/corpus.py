"""Corpora of labelled graph pairs, rebuilt deterministically from ``(name, seed)``."""

import logging
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Optional, Tuple

import networkx as nx
import numpy as np

from posenc_wl.core.config import get_settings
from posenc_wl.core.exceptions import CorpusError
from posenc_wl.graphs import generators as gen
from posenc_wl.graphs.core import (
    apply_permutation,
    as_featured,
    featured,
    from_edge_list,
    from_networkx,
    is_connected,
    random_permutation,
    to_networkx,
)
from posenc_wl.models.graph import FeaturedGraph, Graph
from posenc_wl.models.schemas import CorpusKind, CorpusPairRecord
from posenc_wl.validators.corpus_file import corpus_file_validator

logger = logging.getLogger(__name__)

CONTROL = "control"


@dataclass(frozen=True, eq=False)
class CorpusPair:
    """Two graphs with an id, a label (``control`` for feature-isomorphic copies) and provenance."""

    pair_id: str
    a: FeaturedGraph
    b: FeaturedGraph
    label: str = ""
    provenance: str = ""
    params: Dict[str, Any] = field(default_factory=dict)

    @property
    def is_control(self) -> bool:
        return self.label == CONTROL

    @property
    def is_featured(self) -> bool:
        return self.a.is_featured or self.b.is_featured

    @property
    def directed(self) -> bool:
        return self.a.graph.directed or self.b.graph.directed

    @property
    def max_n(self) -> int:
        return max(self.a.n, self.b.n)

    def reproduction(self) -> Dict[str, Any]:
        return {"pair_id": self.pair_id, "provenance": self.provenance, **self.params}


@dataclass(frozen=True, eq=False)
class Corpus:
    name: str
    seed: int
    pairs: Tuple[CorpusPair, ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def pair(self, pair_id: str) -> CorpusPair:
        for p in self.pairs:
            if p.pair_id == pair_id:
                return p
        raise KeyError(pair_id)

    def to_records(self) -> List[CorpusPairRecord]:
        return [
            CorpusPairRecord(
                pair_id=p.pair_id,
                label=p.label,
                provenance=p.provenance,
                a=corpus_file_validator.to_record(p.a),
                b=corpus_file_validator.to_record(p.b),
            )
            for p in self.pairs
        ]


def _pair(pair_id: str, a, b, label: str = "", provenance: str = "", **params: Any) -> CorpusPair:
    return CorpusPair(pair_id, as_featured(a), as_featured(b), label, provenance, params)


def _control(pair_id: str, g, seed: int, provenance: str) -> CorpusPair:
    p = random_permutation(as_featured(g).n, seed)
    return _pair(pair_id, g, apply_permutation(as_featured(g), p), CONTROL, provenance, permutation_seed=seed)


def standard_corpus(seed: int = 0) -> List[CorpusPair]:
    """Hand-picked pairs plus permuted-copy controls."""
    c4, pendant = gen.fig_a_pair()
    fa, fb = gen.featured_c4_pair()
    pairs = [
        _pair("fig_a", c4, pendant, provenance="C4 vs triangle-plus-pendant"),
        _pair("featured_c4", fa, fb, label="featured", provenance="C4 with features [1,2,3,4] vs [1,3,2,4]"),
        _pair("c6_vs_2c3", gen.cycle(6), gen.cycle_union(2, 3), provenance="C6 vs two disjoint triangles"),
        _pair("p4_vs_star3", gen.path(4), gen.star(3), provenance="path P4 vs star S3"),
        _pair("shrikhande_vs_rook", gen.shrikhande(), gen.rook4x4(), provenance="SRG(16,6,2,2) pair"),
    ]
    ca, cb = gen.cutvertex_pair()
    pairs.append(_pair("cutvertex", ca, cb, provenance="smallest RD-WL but not SPD-WL separated pair"))
    pairs.extend(
        [
            _control("control_c6", gen.cycle(6), seed + 1, "C6 and a permuted copy"),
            _control("control_pendant", gen.triangle_pendant(), seed + 2, "triangle-plus-pendant and a permuted copy"),
            _control("control_featured_c4", fa, seed + 3, "featured C4 and a permuted copy"),
            _control("control_c4_pendant", gen.c4_pendant(), seed + 4, "C4-plus-pendant and a permuted copy"),
            _control("control_gnp8", _connected_gnp(8, 0.4, seed + 5), seed + 6, "connected G(8, 0.4) and a permuted copy"),
        ]
    )
    return pairs


def _connected_gnp(n: int, p: float, seed: int, attempts: int = 200) -> Graph:
    for attempt in range(attempts):
        g = gen.gnp(n, p, seed * 1000 + attempt)
        if is_connected(g):
            return g
    raise CorpusError("no connected G(n, p) sample found", {"n": n, "p": p, "seed": seed})


def _swap_partner(g: Graph, seed: int) -> Optional[Graph]:
    """A connected degree-preserving rewiring of ``g``, or None."""
    nxg = to_networkx(g)
    try:
        nx.double_edge_swap(nxg, nswap=max(g.n, 1), max_tries=100 * max(g.n, 1), seed=seed)
    except (nx.NetworkXError, nx.NetworkXAlgorithmError):
        return None
    other = from_networkx(nxg)
    return other if is_connected(other) else None


def random_corpus(n_max: int, count: int, seed: int) -> List[CorpusPair]:
    """
    Connected G(n, p) graphs paired with a degree-preserving rewiring, relabelled at random.

    Every fifth pair is a permuted-copy control instead.
    """
    if n_max < 4 or count < 0:
        raise CorpusError("random corpus needs n_max >= 4 and count >= 0", {"n_max": n_max, "count": count})
    pairs = []
    for i in range(count):
        rng = np.random.default_rng([seed, i])
        n = int(rng.integers(4, n_max + 1))
        p = float(rng.uniform(0.3, 0.6))
        base_seed = int(rng.integers(0, 2**31))
        a = _connected_gnp(n, p, base_seed)
        if i % 5 == 4:
            pairs.append(_control(f"random_{i}", a, base_seed + 1, f"G({n}, {p:.3f}) and a permuted copy"))
            continue
        b = None
        for attempt in range(20):
            b = _swap_partner(a, base_seed + attempt)
            if b is not None:
                break
        if b is None:
            pairs.append(_control(f"random_{i}", a, base_seed + 1, f"G({n}, {p:.3f}) and a permuted copy"))
            continue
        b = apply_permutation(b, random_permutation(n, base_seed + 2))
        pairs.append(
            _pair(
                f"random_{i}",
                a,
                b,
                provenance=f"G({n}, {p:.3f}) vs a degree-preserving rewiring",
                n=n,
                p=p,
                graph_seed=base_seed,
            )
        )
    return pairs


def _orient(g: Graph, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    edges = [(u, v) if rng.random() < 0.5 else (v, u) for u, v in g.unordered_edges()]
    return from_edge_list(g.n, True, edges)


def digraph_corpus(n_max: int, count: int, seed: int) -> List[CorpusPair]:
    """Two random orientations of one connected graph; every third pair is a permuted control."""
    if n_max < 3 or count < 0:
        raise CorpusError("digraph corpus needs n_max >= 3 and count >= 0", {"n_max": n_max, "count": count})
    pairs = [
        _pair("dc3_vs_tt3", gen.directed_cycle(3), gen.transitive_tournament(3), provenance="directed C3 vs transitive tournament"),
        _control("control_dc4", gen.directed_cycle(4), seed + 1, "directed C4 and a permuted copy"),
    ]
    for i in range(count):
        rng = np.random.default_rng([seed, i, 7])
        n = int(rng.integers(3, n_max + 1))
        base_seed = int(rng.integers(0, 2**31))
        g = _connected_gnp(n, 0.5, base_seed)
        a = _orient(g, base_seed + 1)
        if i % 3 == 2:
            pairs.append(_control(f"digraph_{i}", a, base_seed + 2, "random orientation and a permuted copy"))
            continue
        b = apply_permutation(_orient(g, base_seed + 3), random_permutation(n, base_seed + 4))
        pairs.append(
            _pair(f"digraph_{i}", a, b, provenance="two orientations of one graph", n=n, graph_seed=base_seed)
        )
    return pairs


def csl_corpus(n: Optional[int] = None, skips: Optional[List[int]] = None) -> List[CorpusPair]:
    """All unordered pairs of CSL classes."""
    settings = get_settings()
    n = settings.CSL_N if n is None else n
    skips = settings.csl_skips_list if skips is None else skips
    graphs = {s: gen.csl(n, s) for s in skips}
    return [
        _pair(f"csl_{s}_{t}", graphs[s], graphs[t], provenance=f"CSL({n}, {s}) vs CSL({n}, {t})", n=n, skips=[s, t])
        for s, t in combinations(skips, 2)
    ]


def file_corpus(path: str) -> List[CorpusPair]:
    out = []
    for record in corpus_file_validator.read(path):
        a, b = corpus_file_validator.to_pair(record)
        out.append(_pair(record.pair_id, a, b, record.label, record.provenance or path))
    return out


_TERM = re.compile(r"^\s*([a-z]+)\s*(?:\((.*)\))?\s*$")


def _split_terms(spec: str) -> List[str]:
    """Split on ``+`` outside parentheses, so ``file(runs/a+b.jsonl)`` stays one term."""
    terms: List[str] = []
    depth = start = 0
    for i, ch in enumerate(spec):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth = max(depth - 1, 0)
        elif ch == "+" and depth == 0:
            terms.append(spec[start:i])
            start = i + 1
    terms.append(spec[start:])
    return terms


def _parse_args(raw: str, names: List[str]) -> Dict[str, str]:
    out: Dict[str, str] = {}
    if not raw.strip():
        return out
    for i, part in enumerate(p.strip() for p in raw.split(",")):
        if "=" in part:
            key, value = (x.strip() for x in part.split("=", 1))
        elif i < len(names):
            key, value = names[i], part
        else:
            raise CorpusError(f"too many corpus arguments: {raw}")
        if key not in names:
            raise CorpusError(f"unknown corpus argument: {key}", {"known": names})
        out[key] = value
    return out


def _int_args(raw: str, names: List[str], defaults: Dict[str, int]) -> Dict[str, int]:
    try:
        return {**defaults, **{k: int(v) for k, v in _parse_args(raw, names).items()}}
    except ValueError:
        raise CorpusError(f"corpus arguments must be integers: {raw}") from None


def build_corpus(spec: str, seed: Optional[int] = None) -> Corpus:
    """
    Build a corpus from a spec.

    Args:
        spec: ``standard``, ``random(n_max, count, seed=...)``, ``csl``,
            ``digraph(n_max, count, seed=...)`` or ``file(path)``; ``+`` joins several
        seed: Default seed for terms that do not name one (``SEED`` setting if None)

    Returns:
        Corpus whose pair ids are unique

    Raises:
        CorpusError: on a malformed spec or file
    """
    seed = get_settings().SEED if seed is None else seed
    pairs: List[CorpusPair] = []
    for term in _split_terms(spec):
        m = _TERM.match(term)
        if not m:
            raise CorpusError(f"malformed corpus spec: {term!r}")
        try:
            kind = CorpusKind(m.group(1))
        except ValueError:
            raise CorpusError(f"unknown corpus: {m.group(1)}", {"known": [k.value for k in CorpusKind]}) from None
        raw = m.group(2) or ""
        if kind == CorpusKind.STANDARD:
            pairs.extend(standard_corpus(seed))
        elif kind == CorpusKind.CSL:
            pairs.extend(csl_corpus())
        elif kind == CorpusKind.FILE:
            if not raw.strip():
                raise CorpusError("file corpus needs a path: file(path)")
            pairs.extend(file_corpus(raw.strip()))
        else:
            args = _int_args(raw, ["n_max", "count", "seed"], {"n_max": 8, "count": 20, "seed": seed})
            build = random_corpus if kind == CorpusKind.RANDOM else digraph_corpus
            pairs.extend(build(args["n_max"], args["count"], args["seed"]))

    ids = [p.pair_id for p in pairs]
    duplicates = sorted({i for i in ids if ids.count(i) > 1})
    if duplicates:
        raise CorpusError("duplicate pair ids in corpus", {"pair_ids": duplicates})
    logger.info(f"Built corpus {spec!r} with {len(pairs)} pairs")
    return Corpus(name=spec, seed=seed, pairs=tuple(pairs))
