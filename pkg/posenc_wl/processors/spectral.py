"""Dense symmetric and Hermitian spectral routines.

Every spectral encoding goes through :class:`SpectralProcessor`. Decompositions use
LAPACK's ``eigh`` (numpy), which always converges for symmetric/Hermitian input.
"""

import logging
import math
from typing import Callable, List, Optional

import numpy as np

from posenc_wl.core.config import get_settings
from posenc_wl.core.exceptions import NonFiniteSpectralValueError, SpectralError
from posenc_wl.models.tensors import EigenDecomposition, HermitianMatrix
from posenc_wl.processors.functions import ExtendedAtZero

logger = logging.getLogger(__name__)

ScalarFunction = Callable[[float], float]


class SpectralProcessor:
    """Eigendecompositions, pseudoinverses, matrix powers and spectral functions."""

    def __init__(self):
        self.settings = get_settings()

    def zero_threshold(self, eigenvalues: np.ndarray) -> float:
        """Relative tolerance below which an eigenvalue counts as zero."""
        scale = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
        return self.settings.ZERO_TOL * max(1.0, scale)

    def check_symmetric(self, m: np.ndarray) -> np.ndarray:
        """Return ``m`` as a float array, raising unless it is square and symmetric."""
        a = np.asarray(m, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise SpectralError("matrix must be square", {"shape": list(a.shape)})
        if not np.all(np.isfinite(a)):
            raise SpectralError("matrix entries must be finite")
        scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
        asym = float(np.max(np.abs(a - a.T))) if a.size else 0.0
        if asym > self.settings.SYMMETRY_TOL * scale:
            raise SpectralError(
                "matrix is not symmetric", {"max_asymmetry": asym}
            )
        return (a + a.T) / 2.0

    def sym_eigen(self, m: np.ndarray) -> EigenDecomposition:
        """
        Full eigendecomposition of a real symmetric matrix.

        Args:
            m: Square symmetric matrix

        Returns:
            EigenDecomposition with ascending eigenvalues and orthonormal eigenvectors
        """
        a = self.check_symmetric(m)
        if a.shape[0] == 0:
            return EigenDecomposition(np.zeros(0), np.zeros((0, 0)), self.settings.ZERO_TOL)
        eigenvalues, eigenvectors = np.linalg.eigh(a)
        return EigenDecomposition(
            eigenvalues=eigenvalues,
            eigenvectors=eigenvectors,
            zero_threshold=self.zero_threshold(eigenvalues),
        )

    def hermitian_eigen(self, h: HermitianMatrix) -> EigenDecomposition:
        """Eigendecomposition of a Hermitian matrix given as (re, im) channels."""
        if not h.is_hermitian(self.settings.SYMMETRY_TOL * max(1.0, float(np.max(np.abs(h.re), initial=0.0)))):
            raise SpectralError("matrix is not Hermitian")
        if h.n == 0:
            return EigenDecomposition(np.zeros(0), np.zeros((0, 0), dtype=complex), self.settings.ZERO_TOL)
        eigenvalues, eigenvectors = np.linalg.eigh(h.as_complex())
        return EigenDecomposition(
            eigenvalues=eigenvalues,
            eigenvectors=eigenvectors,
            zero_threshold=self.zero_threshold(eigenvalues),
        )

    def spectral_apply(
        self,
        m: Optional[np.ndarray],
        f: ScalarFunction,
        skip_zero: bool,
        decomposition: Optional[EigenDecomposition] = None,
        name: str = "",
    ) -> np.ndarray:
        """
        Compute ``sum_i f(lambda_i) z_i z_i^T`` over the spectrum of ``m``.

        Args:
            m: Square symmetric matrix (ignored when ``decomposition`` is given)
            f: Scalar function applied to each eigenvalue
            skip_zero: Exclude eigenvalues at or below the zero threshold; an
                :class:`ExtendedAtZero` function takes its ``at_zero`` value there instead
            decomposition: Precomputed decomposition of ``m``
            name: Function name used in error messages

        Raises:
            NonFiniteSpectralValueError: if ``f`` is not finite on an included eigenvalue
        """
        dec = decomposition if decomposition is not None else self.sym_eigen(m)
        if dec.n == 0:
            return np.zeros((0, 0))
        nonzero = dec.nonzero_mask()
        keep = nonzero if skip_zero else np.ones(dec.n, dtype=bool)
        weights = np.zeros(dec.n)
        for i in np.flatnonzero(keep):
            lam = float(dec.eigenvalues[i])
            if isinstance(f, ExtendedAtZero) and not nonzero[i]:
                weights[i] = f.at_zero
                continue
            try:
                value = float(f(lam))
            except (ZeroDivisionError, OverflowError, ValueError):
                raise NonFiniteSpectralValueError(lam, name) from None
            if not math.isfinite(value):
                raise NonFiniteSpectralValueError(lam, name)
            weights[i] = value
        z = dec.eigenvectors
        out = (z * weights) @ z.T
        return (out + out.T) / 2.0

    def pseudoinverse(self, m: np.ndarray) -> np.ndarray:
        """Moore-Penrose pseudoinverse of a symmetric matrix via its spectrum."""
        return self.spectral_apply(m, lambda x: 1.0 / x, skip_zero=True, name="inv")

    def power_stack(self, m: np.ndarray, k_max: int) -> List[np.ndarray]:
        """
        ``[M^0 = I, M^1, ..., M^k_max]`` by repeated multiplication.

        Integer input is multiplied with Python integers so that high powers stay exact.
        """
        a = np.asarray(m)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise SpectralError("matrix must be square", {"shape": list(a.shape)})
        if k_max < 0:
            raise SpectralError("k_max must be nonnegative", {"k_max": k_max})
        n = a.shape[0]
        exact = a.dtype == object or np.issubdtype(a.dtype, np.integer)
        if exact:
            a = a.astype(object)
            identity = np.array([[int(i == j) for j in range(n)] for i in range(n)], dtype=object).reshape(n, n)
        else:
            a = a.astype(float)
            identity = np.eye(n)
        stack = [identity]
        for _ in range(k_max):
            stack.append(stack[-1].dot(a))
        return stack


spectral_processor = SpectralProcessor()

sym_eigen = spectral_processor.sym_eigen
hermitian_eigen = spectral_processor.hermitian_eigen
spectral_apply = spectral_processor.spectral_apply
pseudoinverse = spectral_processor.pseudoinverse
power_stack = spectral_processor.power_stack
