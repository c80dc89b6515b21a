"""Immutable numeric containers for spectra and positional encodings."""

from dataclasses import dataclass, field, replace
from typing import Any, Dict, List

import numpy as np


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """Complex ``n x n`` matrix stored as separate real and imaginary channels."""

    re: np.ndarray
    im: np.ndarray

    @property
    def n(self) -> int:
        return int(self.re.shape[0])

    def as_complex(self) -> np.ndarray:
        return self.re + 1j * self.im

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return bool(
            np.allclose(self.re, self.re.T, atol=tol, rtol=0.0)
            and np.allclose(self.im, -self.im.T, atol=tol, rtol=0.0)
        )


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Ascending eigenvalues with orthonormal eigenvectors in the columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    zero_threshold: float

    @property
    def n(self) -> int:
        return int(self.eigenvalues.shape[0])

    def nonzero_mask(self) -> np.ndarray:
        return np.abs(self.eigenvalues) > self.zero_threshold

    def groups(self, tol: float) -> List[np.ndarray]:
        """Indices of eigenvalues grouped into eigenspaces (consecutive within ``tol``)."""
        if self.n == 0:
            return []
        groups: List[List[int]] = [[0]]
        for i in range(1, self.n):
            if self.eigenvalues[i] - self.eigenvalues[groups[-1][0]] <= tol:
                groups[-1].append(i)
            else:
                groups.append([i])
        return [np.asarray(g, dtype=int) for g in groups]


@dataclass(frozen=True, eq=False)
class RpeTensor:
    """Relative positional encoding: an ``n x n x k`` tensor of per-pair channels.

    ``exact`` tensors hold integer values (possibly Python ints in an object array)
    and tokenize without quantization.
    """

    values: np.ndarray
    name: str
    quant_step: float = 1e-9
    exact: bool = False
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @property
    def k(self) -> int:
        return int(self.values.shape[2])

    def channel(self, i: int) -> np.ndarray:
        return self.values[:, :, i]

    def with_values(self, values: np.ndarray, **changes: Any) -> "RpeTensor":
        return replace(self, values=values, **changes)

    def as_float(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


@dataclass(frozen=True, eq=False)
class ApeMatrix:
    """Absolute positional encoding: an ``n x l`` matrix of per-node values."""

    values: np.ndarray
    name: str
    quant_step: float = 1e-9
    exact: bool = False
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @property
    def l(self) -> int:  # noqa: E743
        return int(self.values.shape[1])

    def as_float(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)
