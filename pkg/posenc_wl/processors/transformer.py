"""Forward-pass APE and RPE graph transformers with seeded random weights.

There is no training here; the networks exist to check permutation equivariance and
the agreement between transformer outputs and refinement verdicts.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np
from scipy.special import softmax

from posenc_wl.core.exceptions import TransformerConfigError
from posenc_wl.graphs.core import as_featured
from posenc_wl.models.graph import FeaturedGraph, Graph
from posenc_wl.models.schemas import ApeMode, RpeMapKind
from posenc_wl.models.tensors import ApeMatrix, RpeTensor
from posenc_wl.processors.pe_maps import embed_tokens
from posenc_wl.processors.tokens import tokenize

logger = logging.getLogger(__name__)

_GELU_C = math.sqrt(2.0 / math.pi)


def gelu(x: np.ndarray) -> np.ndarray:
    """GELU, tanh approximation."""
    return 0.5 * x * (1.0 + np.tanh(_GELU_C * (x + 0.044715 * x**3)))


def _rng(seed: int) -> np.random.Generator:
    # Counter-based bit generator; streams are reproducible across platforms.
    return np.random.Generator(np.random.Philox(seed))


@dataclass(frozen=True)
class TransformerConfig:
    """Shape and seed of a transformer stack."""

    layers: int = 2
    heads: int = 2
    d: int = 4
    d_h: int = 4
    d_r: int = 8
    seed: int = 0
    ape_mode: ApeMode = ApeMode.CONCAT
    rpe_map_kind: RpeMapKind = RpeMapKind.CHANNEL_LINEAR
    gaussian_centers: int = 4
    mlp_hidden: int = 8
    token_dim: int = 4

    def __post_init__(self):
        for name in ("layers", "heads", "d", "d_h", "d_r", "gaussian_centers", "mlp_hidden", "token_dim"):
            if getattr(self, name) < 1:
                raise TransformerConfigError(f"{name} must be at least 1", {name: getattr(self, name)})
        object.__setattr__(self, "ape_mode", ApeMode(self.ape_mode))
        object.__setattr__(self, "rpe_map_kind", RpeMapKind(self.rpe_map_kind))


@dataclass(frozen=True, eq=False)
class LayerWeights:
    w_q: np.ndarray  # heads x d x d_h
    w_k: np.ndarray  # heads x d x d_h
    w_v: np.ndarray  # heads x d x d_h
    w_o: np.ndarray  # d_h x d
    w_1: np.ndarray  # d x d_r
    w_2: np.ndarray  # d_r x d


def init_weights(cfg: TransformerConfig, zero: bool = False) -> List[LayerWeights]:
    """Uniform(-1/sqrt(d), 1/sqrt(d)) weights from ``cfg.seed``, or all zeros."""
    shapes = {
        "w_q": (cfg.heads, cfg.d, cfg.d_h),
        "w_k": (cfg.heads, cfg.d, cfg.d_h),
        "w_v": (cfg.heads, cfg.d, cfg.d_h),
        "w_o": (cfg.d_h, cfg.d),
        "w_1": (cfg.d, cfg.d_r),
        "w_2": (cfg.d_r, cfg.d),
    }
    if zero:
        return [LayerWeights(**{k: np.zeros(s) for k, s in shapes.items()}) for _ in range(cfg.layers)]
    rng = _rng(cfg.seed)
    bound = 1.0 / math.sqrt(cfg.d)
    return [
        LayerWeights(**{k: rng.uniform(-bound, bound, s) for k, s in shapes.items()})
        for _ in range(cfg.layers)
    ]


def zero_weights(cfg: TransformerConfig) -> List[LayerWeights]:
    return init_weights(cfg, zero=True)


@dataclass(frozen=True, eq=False)
class RpeAttentionMaps:
    """
    Parameters of the entrywise maps ``f1`` (gate) and ``f2`` (bias), one pair per layer and head.

    ``channel_linear``: ``f(x) = w . x + b``.
    ``gaussian_mlp``: Gaussian-kernel embedding of each channel followed by a 2-layer perceptron.
    """

    kind: RpeMapKind
    k: int
    # channel_linear: (layers, heads, k) and (layers, heads)
    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: np.ndarray
    # gaussian_mlp
    centers: Optional[np.ndarray] = None  # m
    widths: Optional[np.ndarray] = None  # m
    mlp1_in: Optional[np.ndarray] = None  # layers x heads x (k*m) x hidden
    mlp1_out: Optional[np.ndarray] = None  # layers x heads x hidden
    mlp2_in: Optional[np.ndarray] = None
    mlp2_out: Optional[np.ndarray] = None

    @classmethod
    def random(cls, cfg: TransformerConfig, k: int, seed: Optional[int] = None) -> "RpeAttentionMaps":
        rng = _rng(cfg.seed + 1 if seed is None else seed)
        lh = (cfg.layers, cfg.heads)
        if cfg.rpe_map_kind == RpeMapKind.CHANNEL_LINEAR:
            return cls(
                kind=cfg.rpe_map_kind,
                k=k,
                w1=rng.uniform(-1.0, 1.0, lh + (k,)),
                b1=rng.uniform(0.5, 1.5, lh),
                w2=rng.uniform(-1.0, 1.0, lh + (k,)),
                b2=np.zeros(lh),
            )
        m, hidden = cfg.gaussian_centers, cfg.mlp_hidden
        scale = 1.0 / math.sqrt(k * m)
        return cls(
            kind=cfg.rpe_map_kind,
            k=k,
            w1=np.zeros(lh + (k,)),
            b1=np.zeros(lh),
            w2=np.zeros(lh + (k,)),
            b2=np.zeros(lh),
            centers=np.linspace(0.0, 3.0, m),
            widths=rng.uniform(0.5, 1.5, m),
            mlp1_in=rng.uniform(-scale, scale, lh + (k * m, hidden)),
            mlp1_out=rng.uniform(-1.0, 1.0, lh + (hidden,)),
            mlp2_in=rng.uniform(-scale, scale, lh + (k * m, hidden)),
            mlp2_out=rng.uniform(-1.0, 1.0, lh + (hidden,)),
        )

    @classmethod
    def neutral(cls, cfg: TransformerConfig, k: int) -> "RpeAttentionMaps":
        """``f1 = 1`` and ``f2 = 0`` everywhere."""
        lh = (cfg.layers, cfg.heads)
        return cls(
            kind=RpeMapKind.CHANNEL_LINEAR,
            k=k,
            w1=np.zeros(lh + (k,)),
            b1=np.ones(lh),
            w2=np.zeros(lh + (k,)),
            b2=np.zeros(lh),
        )

    def _gaussian(self, psi: np.ndarray) -> np.ndarray:
        diff = psi[:, :, :, None] - self.centers[None, None, None, :]
        emb = np.exp(-(diff**2) / (2.0 * self.widths**2))
        n = psi.shape[0]
        return emb.reshape(n, n, -1)

    def apply(self, psi: np.ndarray, layer: int, head: int) -> Tuple[np.ndarray, np.ndarray]:
        """Entrywise ``(f1(psi), f2(psi))`` as ``n x n`` matrices."""
        if psi.shape[2] != self.k:
            raise TransformerConfigError("attention maps expect a different channel count", {"k": self.k})
        if self.kind == RpeMapKind.CHANNEL_LINEAR:
            f1 = psi @ self.w1[layer, head] + self.b1[layer, head]
            f2 = psi @ self.w2[layer, head] + self.b2[layer, head]
            return f1, f2
        emb = self._gaussian(psi)
        f1 = gelu(emb @ self.mlp1_in[layer, head]) @ self.mlp1_out[layer, head]
        f2 = gelu(emb @ self.mlp2_in[layer, head]) @ self.mlp2_out[layer, head]
        return f1, f2


def _layer(
    x: np.ndarray,
    w: LayerWeights,
    cfg: TransformerConfig,
    gates: Optional[List[Tuple[np.ndarray, np.ndarray]]],
    attention_log: Optional[List[np.ndarray]],
) -> np.ndarray:
    heads_out = np.zeros((x.shape[0], cfg.d_h))
    for h in range(cfg.heads):
        q, k, v = x @ w.w_q[h], x @ w.w_k[h], x @ w.w_v[h]
        scores = q @ k.T / math.sqrt(cfg.d_h)
        if gates is not None:
            scores = scores + gates[h][1]
        attn = softmax(scores, axis=1)
        if attention_log is not None:
            attention_log.append(attn)
        if gates is not None:
            attn = gates[h][0] * attn
        heads_out = heads_out + attn @ v
    y = x + heads_out @ w.w_o
    return y + gelu(y @ w.w_1) @ w.w_2


def _check_width(x: np.ndarray, cfg: TransformerConfig) -> None:
    if x.shape[1] != cfg.d:
        raise TransformerConfigError(
            "input width does not match the model dimension", {"width": int(x.shape[1]), "d": cfg.d}
        )


def ape_inputs(g: FeaturedGraph, phi: ApeMatrix, cfg: TransformerConfig, categorical: bool = False) -> np.ndarray:
    """Node inputs of an APE transformer: features concatenated with (or added to) the APE."""
    if phi.n != g.n:
        raise TransformerConfigError("APE size does not match the graph", {"phi_n": phi.n, "n": g.n})
    if categorical:
        keys = [tuple(int(t) for t in row) for row in tokenize(phi)]
        pe = embed_tokens(keys, cfg.token_dim, cfg.seed)
    else:
        pe = phi.as_float()
    feats = g.effective_features()
    if cfg.ape_mode == ApeMode.ADD:
        if pe.shape[1] != feats.shape[1]:
            raise TransformerConfigError(
                "add mode needs APE and features of equal width",
                {"ape": int(pe.shape[1]), "features": int(feats.shape[1])},
            )
        return feats + pe
    return np.concatenate([feats, pe], axis=1)


def forward_ape_gt(
    g: Union[Graph, FeaturedGraph],
    phi: ApeMatrix,
    cfg: TransformerConfig,
    weights: Optional[List[LayerWeights]] = None,
    categorical: bool = False,
    attention_log: Optional[List[np.ndarray]] = None,
) -> np.ndarray:
    """
    APE transformer forward pass.

    Args:
        g: Input graph (unfeatured graphs get the constant feature 1)
        phi: Absolute encoding, concatenated or added per ``cfg.ape_mode``
        cfg: Model shape and seed
        weights: Layer weights (default: :func:`init_weights`)
        categorical: Embed APE token rows through the seeded codebook
        attention_log: When given, receives every softmax matrix

    Returns:
        ``n x d`` output matrix
    """
    fg = as_featured(g)
    x = ape_inputs(fg, phi, cfg, categorical)
    _check_width(x, cfg)
    for w in weights if weights is not None else init_weights(cfg):
        x = _layer(x, w, cfg, None, attention_log)
    return x


def forward_rpe_gt(
    g: Union[Graph, FeaturedGraph],
    psi: RpeTensor,
    maps: RpeAttentionMaps,
    cfg: TransformerConfig,
    weights: Optional[List[LayerWeights]] = None,
    attention_log: Optional[List[np.ndarray]] = None,
) -> np.ndarray:
    """
    RPE transformer forward pass: ``f1(psi) * softmax(Q K^T / sqrt(d_h) + f2(psi))``.

    Raises:
        TransformerConfigError: on size mismatches or a non-finite ``f2``
    """
    fg = as_featured(g)
    if psi.n != fg.n:
        raise TransformerConfigError("RPE size does not match the graph", {"psi_n": psi.n, "n": fg.n})
    x = fg.effective_features().astype(float)
    _check_width(x, cfg)
    values = psi.as_float()
    layer_weights = weights if weights is not None else init_weights(cfg)
    for layer, w in enumerate(layer_weights):
        gates = []
        for h in range(cfg.heads):
            f1, f2 = maps.apply(values, layer, h)
            if not np.all(np.isfinite(f2)) or not np.all(np.isfinite(f1)):
                raise TransformerConfigError("attention maps produced non-finite values", {"layer": layer, "head": h})
            gates.append((f1, f2))
        x = _layer(x, w, cfg, gates, attention_log)
    return x


def sorted_rows(out: np.ndarray, decimals: int = 8) -> np.ndarray:
    """Rows in lexicographic order of their rounded values."""
    if out.shape[0] == 0:
        return out
    keys = np.round(out, decimals)
    order = np.lexsort(keys.T[::-1])
    return out[order]


def outputs_match(a: np.ndarray, b: np.ndarray, tol: float = 1e-6) -> bool:
    """Equal output row multisets up to ``tol`` (relative to the output scale)."""
    if a.shape != b.shape:
        return False
    scale = max(1.0, float(np.max(np.abs(a), initial=0.0)))
    return bool(np.allclose(sorted_rows(a), sorted_rows(b), atol=tol * scale, rtol=0.0))
