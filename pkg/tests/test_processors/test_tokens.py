import numpy as np
import pytest

from posenc_wl.core.exceptions import EncodingError, TokenOverflowError
from posenc_wl.graphs import generators as gen
from posenc_wl.harness.registry import encode
from posenc_wl.processors.tokens import quantize, tokenize


def test_quantize_rounds_to_step_multiples():
    assert quantize(np.array([0.7500000001]), 1e-9).tolist() == [750000000]
    assert quantize(np.array([-0.0, 0.0]), 1e-9).tolist() == [0, 0]


def test_quantize_ties_go_to_the_even_multiple():
    assert quantize(np.array([0.5, 1.5, 2.5, -0.5, -1.5]), 1.0).tolist() == [0, 2, 2, 0, -2]


def test_quantize_rejects_bad_step():
    with pytest.raises(EncodingError):
        quantize(np.array([1.0]), 0.0)


def test_quantize_overflow():
    with pytest.raises(TokenOverflowError):
        quantize(np.array([1e12]), 1e-9)
    with pytest.raises(TokenOverflowError):
        quantize(np.array([np.inf]), 1.0)


def test_exact_encodings_tokenize_without_rounding():
    psi = encode("power:adjacency,45", gen.complete(4))
    tokens = tokenize(psi)
    assert tokens[0, 0, 45] == int(psi.values[0, 0, 45])
    assert tokens[0, 0, 45] > 2**63
