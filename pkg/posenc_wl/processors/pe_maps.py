"""Conversions between absolute and relative positional encodings."""

import logging
from hashlib import blake2b
from typing import Hashable, Sequence, Union

import numpy as np

from posenc_wl.graphs.core import featured
from posenc_wl.models.graph import FeaturedGraph, Graph
from posenc_wl.models.schemas import AugmentKind
from posenc_wl.models.tensors import ApeMatrix, RpeTensor
from posenc_wl.processors.encodings import augment
from posenc_wl.processors.refine import rpe_2_wl
from posenc_wl.processors.tokens import row_bytes, tokenize
from posenc_wl.utils.hashing import color_id, multiset_bytes

logger = logging.getLogger(__name__)


def _as_int(digest: bytes) -> int:
    return int.from_bytes(digest, "big")


def ape_to_rpe(phi: ApeMatrix) -> RpeTensor:
    """
    Lift an APE to a symmetric single-channel RPE of pair tokens.

    ``psi(u, v)`` hashes the sorted pair of token rows ``(phi(u), phi(v))``, an injective
    symmetric pairing on the observed values.
    """
    rows = row_bytes(tokenize(phi))
    n = phi.n
    values = np.empty((n, n, 1), dtype=object)
    for u in range(n):
        for v in range(n):
            lo, hi = sorted((rows[u], rows[v]))
            values[u, v, 0] = _as_int(color_id(b"pair-token", lo, hi))
    return RpeTensor(values=values, name=f"pair({phi.name})", quant_step=1.0, exact=True)


def has_identity_channel(psi: RpeTensor) -> bool:
    eye = np.eye(psi.n)
    return any(np.array_equal(psi.as_float()[:, :, i], eye) for i in range(psi.k))


def rpe_to_ape_canonical(g: Union[Graph, FeaturedGraph], psi: RpeTensor) -> ApeMatrix:
    """
    Canonical node tokens read out of the stable psi-2-WL coloring.

    The token of ``v`` hashes its stable diagonal color with the multisets of its row and
    column colors. Node features are ignored. When ``psi`` has no identity channel it is
    diagonally augmented first and ``metadata["diagonal_augmented"]`` is set.
    """
    graph = g.graph if isinstance(g, FeaturedGraph) else g
    augmented = False
    if not has_identity_channel(psi):
        logger.warning(f"{psi.name} has no identity channel; applying diagonal augmentation")
        psi = augment(psi, AugmentKind.DIAGONAL, graph)
        augmented = True

    history = rpe_2_wl(featured(graph), psi)
    n = graph.n
    values = np.empty((n, 1), dtype=object)
    for v in range(n):
        row = [history.color(history.stable_round, v, w) for w in range(n)]
        col = [history.color(history.stable_round, w, v) for w in range(n)]
        token = color_id(
            b"canonical-ape",
            history.color(history.stable_round, v, v),
            multiset_bytes(row),
            multiset_bytes(col),
        )
        values[v, 0] = _as_int(token)
    return ApeMatrix(
        values=values,
        name=f"canonical({psi.name})",
        quant_step=1.0,
        exact=True,
        metadata={"diagonal_augmented": augmented, "stable_round": history.stable_round},
    )


def embed_tokens(tokens: Sequence[Hashable], dim: int, seed: int) -> np.ndarray:
    """
    Seeded random codebook: one fixed uniform(-1, 1) vector per distinct token.

    The vector depends only on ``(token, seed)``, so equal tokens on different graphs
    embed identically.
    """
    out = np.zeros((len(tokens), dim))
    cache = {}
    for i, tok in enumerate(tokens):
        if isinstance(tok, np.integer):
            tok = int(tok)
        if tok not in cache:
            key = int.from_bytes(blake2b(repr(tok).encode("utf-8"), digest_size=8).digest(), "big")
            rng = np.random.default_rng([seed, key])
            cache[tok] = rng.uniform(-1.0, 1.0, dim)
        out[i] = cache[tok]
    return out
