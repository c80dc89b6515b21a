"""Encoding registry: parses ``[aug+]*base[:params]`` specs and computes encodings.

Examples: ``resistance``, ``diag+adjacency``, ``heat:1,2``, ``kernel:exp``,
``distance:inv``, ``nkernel:inv``, ``power:laplacian`` (``2n-1`` powers),
``power:sym_norm_adjacency,20``, ``magnetic:0.25``, ``directed_stack``, ``rspe:inv0``,
``eigenproj``, ``pair:degree``; APEs ``degree``, ``rwse:1-4``, ``hkdiagse:1,2``,
``canonical:resistance``.
"""

import re
from functools import lru_cache
from typing import List, Tuple, Union

from posenc_wl.core.exceptions import EncodingError
from posenc_wl.models.graph import FeaturedGraph, Graph
from posenc_wl.models.schemas import ApeKind, AugmentKind, EncodingSpec, MatrixKind, PowerBase, SpectralForm
from posenc_wl.models.tensors import ApeMatrix, RpeTensor
from posenc_wl.processors import encodings as enc
from posenc_wl.processors.functions import resolve_function
from posenc_wl.processors.pe_maps import ape_to_rpe, rpe_to_ape_canonical

Encoding = Union[RpeTensor, ApeMatrix]

AUGMENT_PREFIXES = {
    "diag": AugmentKind.DIAGONAL,
    "comb": AugmentKind.COMBINATORIAL,
    "sym": AugmentKind.PSEUDOSYMMETRIC,
}

MATRIX_BASES = {kind.value for kind in MatrixKind}
RPE_BASES = MATRIX_BASES | {
    "spd",
    "resistance",
    "pinv",
    "kernel",
    "distance",
    "nkernel",
    "ndistance",
    "heat",
    "power",
    "magnetic",
    "directed_stack",
    "rspe",
    "eigenproj",
    "pair",
}
APE_BASES = {kind.value for kind in ApeKind} | {"canonical"}

_ALIASES = {"rd": "resistance", "a": "adjacency", "l": "laplacian"}
_NESTED = {"pair", "canonical"}


@lru_cache(maxsize=512)
def parse_encoding(text: str) -> EncodingSpec:
    """
    Parse an encoding spec.

    Raises:
        EncodingError: on an unknown base, augmentation or malformed parameters
    """
    raw = text.strip()
    if not raw:
        raise EncodingError("empty encoding spec")
    augs: List[AugmentKind] = []
    rest = raw
    while "+" in rest:
        head, tail = rest.split("+", 1)
        if head not in AUGMENT_PREFIXES:
            break
        augs.append(AUGMENT_PREFIXES[head])
        rest = tail
    base, _, params = rest.partition(":")
    base = _ALIASES.get(base, base)
    if base in _NESTED:
        param_list = [params] if params else []
    else:
        param_list = [p for p in params.split(",") if p] if params else []
    if base in RPE_BASES:
        kind = "rpe"
    elif base in APE_BASES:
        kind = "ape"
        if augs:
            raise EncodingError(f"augmentations apply to relative encodings only: {raw}")
    else:
        raise EncodingError(f"unknown encoding: {base}", {"spec": raw})
    if base in _NESTED and not param_list:
        raise EncodingError(f"{base} needs an inner encoding spec", {"spec": raw})
    return EncodingSpec(text=raw, kind=kind, base=base, params=param_list, augmentations=augs)


def _times(params: List[str]) -> List[float]:
    """``["1-4"]`` -> ``[1, 2, 3, 4]``; ``["1", "2.5"]`` -> ``[1.0, 2.5]``."""
    out: List[float] = []
    for p in params:
        m = re.fullmatch(r"(\d+)-(\d+)", p)
        try:
            if m:
                out.extend(float(t) for t in range(int(m.group(1)), int(m.group(2)) + 1))
            else:
                out.append(float(p))
        except ValueError:
            raise EncodingError(f"invalid time: {p!r}") from None
    return out


def _param(spec: EncodingSpec, i: int, default: str) -> str:
    return spec.params[i] if len(spec.params) > i else default


def _power_k(spec: EncodingSpec, n: int) -> int:
    raw = _param(spec, 1, "2n-1")
    if raw == "2n-1":
        return max(2 * n - 1, 0)
    try:
        return int(raw)
    except ValueError:
        raise EncodingError(f"invalid power count: {raw!r}", {"spec": spec.text}) from None


def _rpe_base(spec: EncodingSpec, g: Graph, n_for_powers: int) -> RpeTensor:
    base, params = spec.base, spec.params
    if base in MATRIX_BASES:
        return enc.rpe_matrix(g, base)
    if base == "spd":
        return enc.rpe_spd(g)
    if base == "resistance":
        return enc.rpe_resistance(g)
    if base == "pinv":
        return enc.rpe_spectral(g, resolve_function("inv"), SpectralForm.KERNEL, name="inv")
    if base in ("kernel", "distance", "nkernel", "ndistance"):
        fname = _param(spec, 0, "inv")
        operator = "sym_norm_laplacian" if base.startswith("n") else "laplacian"
        form = SpectralForm.KERNEL if base.endswith("kernel") else SpectralForm.DISTANCE
        return enc.rpe_spectral(g, resolve_function(fname), form, operator=operator, name=fname)
    if base == "heat":
        return enc.rpe_heat_kernel(g, _times(params) or [1.0])
    if base == "power":
        return enc.rpe_power_stack(
            g,
            PowerBase(_param(spec, 0, "laplacian")),
            _power_k(spec, n_for_powers),
            identity_channel=_param(spec, 2, "reconstruction"),
        )
    if base == "magnetic":
        try:
            alpha = float(_param(spec, 0, "0.25"))
        except ValueError:
            raise EncodingError(f"invalid magnetic potential in {spec.text!r}") from None
        return enc.rpe_magnetic_laplacian(g, alpha)
    if base == "directed_stack":
        return enc.rpe_directed_stack(g)
    if base == "rspe":
        fname = _param(spec, 0, "inv0")
        return enc.rpe_rspe(g, resolve_function(fname), name=fname)
    if base == "eigenproj":
        return enc.rpe_eigenprojections(g)
    if base == "pair":
        inner = encode(params[0], g)
        if not isinstance(inner, ApeMatrix):
            raise EncodingError("pair: needs an absolute inner encoding", {"spec": spec.text})
        return ape_to_rpe(inner)
    raise EncodingError(f"unknown relative encoding: {base}")


def _ape(spec: EncodingSpec, g: Graph) -> ApeMatrix:
    if spec.base == "canonical":
        inner = encode(spec.params[0], g)
        if not isinstance(inner, RpeTensor):
            raise EncodingError("canonical: needs a relative inner encoding", {"spec": spec.text})
        return rpe_to_ape_canonical(g, inner)
    kind = ApeKind(spec.base)
    if kind == ApeKind.DEGREE:
        return enc.ape_compute(g, kind)
    return enc.ape_compute(g, kind, _times(spec.params))


def _graph(g: Union[Graph, FeaturedGraph]) -> Graph:
    return g.graph if isinstance(g, FeaturedGraph) else g


def encode(text: str, g: Union[Graph, FeaturedGraph], n_for_powers: int = -1) -> Encoding:
    """
    Compute the encoding named by ``text`` on ``g`` (features are never used).

    Args:
        text: Encoding spec
        g: Graph
        n_for_powers: Vertex count used for ``2n-1`` power counts (default: ``g.n``)
    """
    spec = parse_encoding(text)
    graph = _graph(g)
    if spec.kind == "ape":
        return _ape(spec, graph)
    psi = _rpe_base(spec, graph, graph.n if n_for_powers < 0 else n_for_powers)
    # Prefixes apply right to left: "diag+comb+x" is diag(comb(x)).
    for aug in reversed(spec.augmentations):
        psi = enc.augment(psi, aug, graph)
    return psi


def encode_pair(
    text: str, a: Union[Graph, FeaturedGraph], b: Union[Graph, FeaturedGraph]
) -> Tuple[Encoding, Encoding]:
    """
    Encode both graphs of a pair with aligned channel counts.

    Power stacks use ``2 max(n_a, n_b) - 1`` powers on both sides and eigenprojection
    channels are zero-padded to the larger group count.
    """
    n = max(_graph(a).n, _graph(b).n)
    ea, eb = encode(text, a, n), encode(text, b, n)
    if isinstance(ea, RpeTensor) and isinstance(eb, RpeTensor) and ea.k != eb.k and _pads(text):
        k = max(ea.k, eb.k)
        ea, eb = enc.pad_channels(ea, k), enc.pad_channels(eb, k)
    return ea, eb


def _pads(text: str) -> bool:
    spec = parse_encoding(text)
    return spec.base == "eigenproj"
