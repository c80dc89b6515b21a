"""Value quantization: turns real-valued encodings into exact integer tokens."""

from typing import List, Union

import numpy as np

from posenc_wl.core.config import get_settings
from posenc_wl.core.exceptions import EncodingError, TokenOverflowError
from posenc_wl.models.graph import FeaturedGraph
from posenc_wl.models.tensors import ApeMatrix, RpeTensor
from posenc_wl.utils.hashing import int_tuple_bytes

INT64_MAX = np.iinfo(np.int64).max


def quantize(values: np.ndarray, quant_step: float) -> np.ndarray:
    """
    Round each value to the nearest multiple of ``quant_step``; ties go to the even multiple.

    Returns:
        int64 array of multiples; ``-0.0`` and ``0.0`` both map to 0

    Raises:
        TokenOverflowError: if a scaled value is not finite or leaves the int64 range
    """
    if not quant_step > 0:
        raise EncodingError("quant_step must be positive", {"quant_step": quant_step})
    scaled = np.asarray(values, dtype=float) / quant_step
    if scaled.size and (
        not np.all(np.isfinite(scaled)) or float(np.max(np.abs(scaled))) >= INT64_MAX
    ):
        raise TokenOverflowError(
            "value / quant_step overflows the integer token range",
            {"quant_step": quant_step},
        )
    return np.rint(scaled).astype(np.int64)


def tokenize(encoding: Union[RpeTensor, ApeMatrix]) -> np.ndarray:
    """Channel-wise integer tokens of an encoding, same shape as its values."""
    if encoding.exact:
        flat = [int(x) for x in encoding.values.ravel()]
        return np.array(flat, dtype=object).reshape(encoding.values.shape)
    return quantize(encoding.values, encoding.quant_step)


def feature_tokens(g: FeaturedGraph) -> np.ndarray:
    """Tokens of the effective feature rows (constant 1 when unfeatured)."""
    return quantize(g.effective_features(), get_settings().FEATURE_QUANT_STEP)


def row_bytes(tokens: np.ndarray) -> List[bytes]:
    """Canonical bytes for each row of an ``n x c`` token matrix."""
    return [int_tuple_bytes(row) for row in tokens]


def pair_bytes(tokens: np.ndarray) -> List[List[bytes]]:
    """Canonical bytes for each ``(u, v)`` channel vector of an ``n x n x k`` token tensor."""
    n = tokens.shape[0]
    return [[int_tuple_bytes(tokens[u, v]) for v in range(n)] for u in range(n)]
