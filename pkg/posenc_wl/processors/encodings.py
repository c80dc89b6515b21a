"""Absolute and relative positional encodings, augmentations and JSON export."""

import logging
from functools import lru_cache
from typing import Any, Dict, Optional, Sequence, Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from posenc_wl.core.config import get_settings
from posenc_wl.core.exceptions import EncodingError
from posenc_wl.models.graph import Graph
from posenc_wl.models.schemas import ApeKind, AugmentKind, MatrixKind, PowerBase, SpectralForm
from posenc_wl.models.tensors import ApeMatrix, EigenDecomposition, RpeTensor
from posenc_wl.processors.functions import HeatFunction, ScalarFunction
from posenc_wl.processors.spectral import spectral_processor

logger = logging.getLogger(__name__)

_EXACT_MATRICES = {MatrixKind.ADJACENCY, MatrixKind.LAPLACIAN}
_NORMALIZED = {
    MatrixKind.SYM_NORM_ADJACENCY,
    MatrixKind.RW_NORM_ADJACENCY,
    MatrixKind.SYM_NORM_LAPLACIAN,
    MatrixKind.RW_NORM_LAPLACIAN,
}


def _inverse_degrees(degrees: np.ndarray, power: float) -> np.ndarray:
    """``d^-power`` with isolated vertices (degree 0) mapped to 0."""
    out = np.zeros(degrees.shape, dtype=float)
    nz = degrees > 0
    out[nz] = degrees[nz].astype(float) ** (-power)
    return out


def graph_matrix(g: Graph, kind: Union[MatrixKind, str]) -> np.ndarray:
    """
    One of the six common graph matrices.

    Adjacency and Laplacian are returned as int64; normalized variants as float.
    Degree-0 rows of ``D^-1`` and ``D^-1/2`` are zero.
    """
    kind = MatrixKind(kind)
    if kind in _NORMALIZED and g.directed:
        raise EncodingError(f"{kind.value} is defined for undirected graphs only")
    a = np.array(g.adjacency, dtype=np.int64)
    deg = a.sum(axis=1)
    if kind == MatrixKind.ADJACENCY:
        return a
    if kind == MatrixKind.LAPLACIAN:
        return np.diag(deg) - a
    eye = np.eye(g.n)
    if kind in (MatrixKind.SYM_NORM_ADJACENCY, MatrixKind.SYM_NORM_LAPLACIAN):
        s = _inverse_degrees(deg, 0.5)
        a_hat = s[:, None] * a * s[None, :]
        return a_hat if kind == MatrixKind.SYM_NORM_ADJACENCY else eye - a_hat
    r = _inverse_degrees(deg, 1.0)
    a_tilde = r[:, None] * a
    return a_tilde if kind == MatrixKind.RW_NORM_ADJACENCY else eye - a_tilde


@lru_cache(maxsize=2048)
def operator_decomposition(g: Graph, operator: str = "laplacian") -> EigenDecomposition:
    """Cached eigendecomposition of ``L`` (or of ``I - D^-1/2 A D^-1/2``)."""
    return spectral_processor.sym_eigen(graph_matrix(g, operator))


def _single(values: np.ndarray, name: str, exact: bool = False, **meta: Any) -> RpeTensor:
    quant = 1.0 if exact else get_settings().QUANT_STEP
    return RpeTensor(values=values[:, :, None], name=name, quant_step=quant, exact=exact, metadata=meta)


def _stack(channels: Sequence[np.ndarray], name: str, exact: bool = False, **meta: Any) -> RpeTensor:
    n = channels[0].shape[0] if channels else 0
    dtype = object if exact else float
    values = np.zeros((n, n, len(channels)), dtype=dtype)
    for i, ch in enumerate(channels):
        values[:, :, i] = ch
    quant = 1.0 if exact else get_settings().QUANT_STEP
    return RpeTensor(values=values, name=name, quant_step=quant, exact=exact, metadata=meta)


def _require_undirected(g: Graph, what: str) -> None:
    if g.directed:
        raise EncodingError(f"{what} is defined for undirected graphs only")


def _components(g: Graph) -> np.ndarray:
    if g.n == 0:
        return np.zeros(0, dtype=int)
    _, labels = connected_components(csr_matrix(np.asarray(g.adjacency, dtype=float)), directed=False)
    return labels


class RpeEncoder:
    """Relative positional encodings of a graph."""

    def __init__(self):
        self.settings = get_settings()

    def rpe_matrix(self, g: Graph, kind: Union[MatrixKind, str]) -> RpeTensor:
        """The named graph matrix as a single-channel RPE."""
        kind = MatrixKind(kind)
        m = graph_matrix(g, kind)
        return _single(m.astype(object) if kind in _EXACT_MATRICES else m, kind.value, exact=kind in _EXACT_MATRICES)

    def rpe_spd(self, g: Graph) -> RpeTensor:
        """All-pairs shortest-path distances; disconnected pairs get the sentinel ``n``."""
        _require_undirected(g, "SPD")
        if g.n == 0:
            return _single(np.zeros((0, 0), dtype=object), "spd", exact=True)
        dist = shortest_path(
            csr_matrix(np.asarray(g.adjacency, dtype=float)), directed=False, unweighted=True
        )
        dist[~np.isfinite(dist)] = g.n
        return _single(dist.astype(np.int64).astype(object), "spd", exact=True, sentinel=g.n)

    def laplacian_pinv(self, g: Graph) -> np.ndarray:
        _require_undirected(g, "L pseudoinverse")
        return spectral_processor.spectral_apply(
            None, lambda x: 1.0 / x, skip_zero=True, decomposition=operator_decomposition(g), name="inv"
        )

    def rpe_resistance(self, g: Graph) -> RpeTensor:
        """Resistance distance ``L+(u,u) + L+(v,v) - 2 L+(u,v)``; cross-component pairs get ``n``."""
        _require_undirected(g, "resistance distance")
        pinv = self.laplacian_pinv(g)
        diag = np.diag(pinv)
        rd = diag[:, None] + diag[None, :] - 2.0 * pinv
        np.fill_diagonal(rd, 0.0)
        rd = np.maximum(rd, 0.0)
        labels = _components(g)
        rd[labels[:, None] != labels[None, :]] = float(g.n)
        return _single(rd, "resistance", sentinel=g.n)

    def spectral_kernel(self, g: Graph, f: ScalarFunction, operator: str = "laplacian", name: str = "") -> np.ndarray:
        _require_undirected(g, "spectral kernel")
        return spectral_processor.spectral_apply(
            None, f, skip_zero=True, decomposition=operator_decomposition(g, operator), name=name
        )

    def rpe_spectral(
        self,
        g: Graph,
        f: ScalarFunction,
        form: Union[SpectralForm, str],
        operator: str = "laplacian",
        name: str = "",
    ) -> RpeTensor:
        """
        Spectral kernel ``K^f`` or spectral distance ``d^f`` of the (normalized) Laplacian.

        Raises:
            NonFiniteSpectralValueError: if ``f`` is not finite on a nonzero eigenvalue
            EncodingError: if a squared distance is below ``-DISTANCE_NEGATIVE_TOL``
        """
        form = SpectralForm(form)
        label = name or getattr(f, "__name__", repr(f))
        kernel = self.spectral_kernel(g, f, operator, name=label)
        prefix = "" if operator == "laplacian" else "n"
        if form == SpectralForm.KERNEL:
            return _single(kernel, f"{prefix}kernel({label})", function=label, operator=operator)
        diag = np.diag(kernel)
        sq = diag[:, None] + diag[None, :] - 2.0 * kernel
        if sq.size and float(sq.min()) < -self.settings.DISTANCE_NEGATIVE_TOL:
            raise EncodingError(
                "spectral distance has a negative square", {"min": float(sq.min()), "function": label}
            )
        dist = np.sqrt(np.maximum(sq, 0.0))
        np.fill_diagonal(dist, 0.0)
        return _single(dist, f"{prefix}distance({label})", function=label, operator=operator)

    def rpe_heat_kernel(self, g: Graph, times: Sequence[float]) -> RpeTensor:
        """One heat-kernel channel ``H^(t)`` per time."""
        if any(t <= 0 for t in times):
            raise EncodingError("heat times must be positive", {"times": list(times)})
        channels = [self.spectral_kernel(g, HeatFunction(t), name=f"heat@{t:g}") for t in times]
        return _stack(channels, "heat(" + ",".join(f"{t:g}" for t in times) + ")", times=list(times))

    def rpe_power_stack(
        self,
        g: Graph,
        base: Union[PowerBase, str],
        k_max: int,
        identity_channel: str = "reconstruction",
    ) -> RpeTensor:
        """
        ``k_max + 1`` channels of matrix powers (or heat kernels ``H^(j)`` for the heat base).

        For the heat base channel 0 is ``sum_{lambda > 0} z z^T`` (``identity_channel="reconstruction"``)
        or the literal identity (``identity_channel="literal"``).
        """
        base = PowerBase(base)
        _require_undirected(g, "power stack")
        if base == PowerBase.HEAT:
            if identity_channel == "literal":
                first = np.eye(g.n)
            elif identity_channel == "reconstruction":
                first = spectral_processor.spectral_apply(
                    None, lambda x: 1.0, skip_zero=True, decomposition=operator_decomposition(g), name="one"
                )
            else:
                raise EncodingError(f"unknown identity channel option: {identity_channel}")
            channels = [first] + [
                self.spectral_kernel(g, HeatFunction(j), name=f"heat@{j}") for j in range(1, k_max + 1)
            ]
            return _stack(channels, f"power(heat,{k_max})", identity_channel=identity_channel)
        m = graph_matrix(g, base.value)
        stack = spectral_processor.power_stack(m, k_max)
        exact = base in (PowerBase.LAPLACIAN, PowerBase.ADJACENCY)
        return _stack(stack, f"power({base.value},{k_max})", exact=exact)

    def rpe_magnetic_laplacian(self, g: Graph, alpha: float) -> RpeTensor:
        """Magnetic Laplacian ``D* - T^alpha * A*`` as (real, imaginary) channels."""
        if not g.directed:
            raise EncodingError("the magnetic Laplacian is defined for directed graphs")
        a = np.asarray(g.adjacency, dtype=float)
        a_sym = (a + a.T) / 2.0
        d_sym = np.diag(a_sym.sum(axis=1))
        phase = 2.0 * np.pi * alpha * np.sign(a.T - a)
        re = d_sym - np.cos(phase) * a_sym
        im = -np.sin(phase) * a_sym
        return _stack([re, im], f"magnetic({alpha:g})", alpha=alpha)

    def rpe_directed_stack(self, g: Graph) -> RpeTensor:
        """``(D*, A, A^T)`` for a directed graph."""
        if not g.directed:
            raise EncodingError("the directed stack is defined for directed graphs")
        a = np.asarray(g.adjacency, dtype=float)
        d_sym = np.diag(((a + a.T) / 2.0).sum(axis=1))
        return _stack([d_sym, a, a.T], "directed_stack")

    def rpe_rspe(self, g: Graph, f: ScalarFunction, name: str = "") -> RpeTensor:
        """Relative SPE ``V diag(f(Lambda)) V^T`` including the zero eigenspace."""
        _require_undirected(g, "RSPE")
        label = name or getattr(f, "__name__", repr(f))
        values = spectral_processor.spectral_apply(
            None, f, skip_zero=False, decomposition=operator_decomposition(g), name=label
        )
        return _single(values, f"rspe({label})", function=label)

    def rpe_eigenprojections(self, g: Graph, group_tol: Optional[float] = None) -> RpeTensor:
        """One projector channel per Laplacian eigenspace, by ascending eigenvalue."""
        _require_undirected(g, "eigenprojections")
        tol = self.settings.EIGEN_GROUP_TOL if group_tol is None else group_tol
        dec = operator_decomposition(g)
        channels = []
        eigenvalues = []
        for idx in dec.groups(tol):
            z = dec.eigenvectors[:, idx]
            proj = z @ z.T
            channels.append((proj + proj.T) / 2.0)
            eigenvalues.append(float(dec.eigenvalues[idx].mean()))
        if not channels:
            return _stack([], "eigenproj")
        return _stack(channels, "eigenproj", eigenvalues=eigenvalues)

    def pad_channels(self, psi: RpeTensor, k: int) -> RpeTensor:
        """Append zero channels up to ``k`` channels."""
        if psi.k > k:
            raise EncodingError("cannot pad to fewer channels", {"k": psi.k, "target": k})
        if psi.k == k:
            return psi
        pad = np.zeros((psi.n, psi.n, k - psi.k), dtype=psi.values.dtype)
        if psi.exact:
            pad = pad.astype(object)
            pad[...] = 0
        return psi.with_values(np.concatenate([psi.values, pad], axis=2))

    def augment(self, psi: RpeTensor, kind: Union[AugmentKind, str], g: Graph) -> RpeTensor:
        """
        Diagonal (prepend ``I``), combinatorial (prepend ``A``) or pseudo-symmetric
        (``(psi, psi^T)``) augmentation.
        """
        kind = AugmentKind(kind)
        if psi.n != g.n:
            raise EncodingError("encoding size does not match the graph", {"psi_n": psi.n, "n": g.n})
        dtype = object if psi.exact else float
        if kind == AugmentKind.PSEUDOSYMMETRIC:
            values = np.concatenate([psi.values, np.transpose(psi.values, (1, 0, 2))], axis=2)
        else:
            first = np.eye(g.n, dtype=np.int64) if kind == AugmentKind.DIAGONAL else np.asarray(g.adjacency)
            values = np.concatenate([first.astype(dtype)[:, :, None], psi.values.astype(dtype)], axis=2)
        prefix = {AugmentKind.DIAGONAL: "diag", AugmentKind.COMBINATORIAL: "comb", AugmentKind.PSEUDOSYMMETRIC: "sym"}[kind]
        augmentations = list(psi.metadata.get("augmentations", [])) + [kind.value]
        return RpeTensor(
            values=values,
            name=f"{prefix}+{psi.name}",
            quant_step=psi.quant_step,
            exact=psi.exact,
            metadata={**psi.metadata, "augmentations": augmentations},
        )


class ApeEncoder:
    """Absolute positional encodings of a graph."""

    def __init__(self):
        self.settings = get_settings()

    def ape_compute(
        self, g: Graph, kind: Union[ApeKind, str], times: Sequence[float] = ()
    ) -> ApeMatrix:
        """
        Degree column, RWSE ``diag(A~^t)`` columns, or HKdiagSE ``diag(H^(t))`` columns.
        """
        kind = ApeKind(kind)
        _require_undirected(g, "APE")
        if kind == ApeKind.DEGREE:
            deg = np.asarray(g.adjacency).sum(axis=1).astype(object).reshape(-1, 1)
            return ApeMatrix(values=deg, name="degree", quant_step=1.0, exact=True)
        if not times:
            raise EncodingError(f"{kind.value} needs at least one time")
        if kind == ApeKind.RWSE:
            if any(int(t) != t or t < 1 for t in times):
                raise EncodingError("RWSE times must be positive integers", {"times": list(times)})
            a_tilde = graph_matrix(g, MatrixKind.RW_NORM_ADJACENCY)
            powers = spectral_processor.power_stack(a_tilde, int(max(times)))
            cols = [np.diag(powers[int(t)]) for t in times]
        else:
            cols = [
                np.diag(rpe_encoder.spectral_kernel(g, HeatFunction(t), name=f"heat@{t:g}"))
                for t in times
            ]
        values = np.stack(cols, axis=1) if g.n else np.zeros((0, len(times)))
        label = f"{kind.value}(" + ",".join(f"{t:g}" for t in times) + ")"
        return ApeMatrix(values=values, name=label, quant_step=self.settings.QUANT_STEP, metadata={"times": list(times)})


rpe_encoder = RpeEncoder()
ape_encoder = ApeEncoder()

rpe_matrix = rpe_encoder.rpe_matrix
rpe_spd = rpe_encoder.rpe_spd
rpe_resistance = rpe_encoder.rpe_resistance
rpe_spectral = rpe_encoder.rpe_spectral
rpe_heat_kernel = rpe_encoder.rpe_heat_kernel
rpe_power_stack = rpe_encoder.rpe_power_stack
rpe_magnetic_laplacian = rpe_encoder.rpe_magnetic_laplacian
rpe_directed_stack = rpe_encoder.rpe_directed_stack
rpe_rspe = rpe_encoder.rpe_rspe
rpe_eigenprojections = rpe_encoder.rpe_eigenprojections
pad_channels = rpe_encoder.pad_channels
augment = rpe_encoder.augment
ape_compute = ape_encoder.ape_compute


def encoding_to_dict(encoding: Union[RpeTensor, ApeMatrix]) -> Dict[str, Any]:
    """JSON-ready ``{name, n, k, quant_step, values}`` (``l`` instead of ``k`` for APEs)."""
    values = encoding.values
    if encoding.exact:
        nested = np.vectorize(int, otypes=[object])(values).tolist() if values.size else values.tolist()
    else:
        nested = np.asarray(values, dtype=float).tolist()
    width_key = "k" if isinstance(encoding, RpeTensor) else "l"
    width = encoding.k if isinstance(encoding, RpeTensor) else encoding.l
    return {
        "name": encoding.name,
        "n": encoding.n,
        width_key: width,
        "quant_step": encoding.quant_step,
        "exact": encoding.exact,
        "values": nested,
    }


def encoding_from_dict(data: Dict[str, Any]) -> Union[RpeTensor, ApeMatrix]:
    """Inverse of :func:`encoding_to_dict`."""
    exact = bool(data.get("exact", False))
    try:
        values = np.array(data["values"], dtype=object if exact else float)
        n = int(data["n"])
        if "k" in data:
            values = values.reshape(n, n, int(data["k"]))
            return RpeTensor(values=values, name=data["name"], quant_step=float(data["quant_step"]), exact=exact)
        values = values.reshape(n, int(data["l"]))
        return ApeMatrix(values=values, name=data["name"], quant_step=float(data["quant_step"]), exact=exact)
    except (KeyError, ValueError, TypeError) as e:
        raise EncodingError(f"invalid encoding document: {e}") from e
