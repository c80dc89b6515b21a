import math

import numpy as np
import pytest

from posenc_wl.core.exceptions import EncodingError
from posenc_wl.graphs import generators as gen
from posenc_wl.graphs.core import apply_permutation, is_connected, permute_rows, permute_rpe_values, random_permutation
from posenc_wl.harness.registry import encode, encode_pair, parse_encoding
from posenc_wl.models.schemas import AugmentKind
from posenc_wl.processors.encodings import (
    encoding_from_dict,
    encoding_to_dict,
    graph_matrix,
    operator_decomposition,
    rpe_encoder,
    rpe_heat_kernel,
    rpe_resistance,
    rpe_spd,
)
from posenc_wl.processors.pe_maps import has_identity_channel
from posenc_wl.processors.spectral import spectral_processor

PERMUTED_GRAPHS = [(gen.gnp(4 + i % 6, 0.4, seed=i), random_permutation(4 + i % 6, seed=100 + i)) for i in range(50)]


def test_resistance_on_c4():
    rd = rpe_resistance(gen.cycle(4)).values[:, :, 0]
    assert rd[0, 1] == pytest.approx(0.75)
    assert rd[0, 2] == pytest.approx(1.0)
    assert np.allclose(np.diag(rd), 0.0)


def test_resistance_across_components_uses_sentinel():
    rd = rpe_resistance(gen.cycle_union(2, 3)).values[:, :, 0]
    assert rd[0, 3] == 6.0
    assert rd[0, 1] == pytest.approx(2.0 / 3.0)


def test_spd_sentinel_and_exactness():
    psi = rpe_spd(gen.cycle_union(2, 3))
    assert psi.exact
    assert sorted(int(x) for x in psi.values[0, :, 0]) == [0, 1, 1, 6, 6, 6]


def test_heat_kernel_on_k2():
    h = rpe_heat_kernel(gen.complete(2), [1.0]).values[:, :, 0]
    expected = math.exp(-2.0) / 2.0
    assert h[0, 0] == pytest.approx(expected, abs=1e-12)
    assert h[0, 1] == pytest.approx(-expected, abs=1e-12)


def test_heat_times_must_be_positive():
    with pytest.raises(EncodingError):
        rpe_heat_kernel(gen.complete(2), [0.0])


def test_laplacian_pseudoinverse():
    g = gen.path(4)
    lap = graph_matrix(g, "laplacian").astype(float)
    pinv = rpe_encoder.laplacian_pinv(g)
    assert np.allclose(lap @ pinv @ lap, lap)
    assert np.allclose(pinv.sum(axis=1), 0.0)


def test_rspe_with_extended_inverse_is_the_pseudoinverse():
    g = gen.c4_pendant()
    assert np.allclose(encode("rspe:inv0", g).values[:, :, 0], rpe_encoder.laplacian_pinv(g))


def test_eigenprojections_sum_to_identity():
    psi = encode("eigenproj", gen.cycle(5))
    assert psi.k == 3
    assert np.allclose(psi.as_float().sum(axis=2), np.eye(5))


def test_power_stack_is_exact_for_adjacency():
    psi = encode("power:adjacency,3", gen.cycle(4))
    assert psi.exact and psi.k == 4
    assert int(psi.values[0, 0, 2]) == 2
    assert int(psi.values[0, 2, 2]) == 2


def test_power_count_follows_the_larger_graph():
    a, b = encode_pair("power:laplacian", gen.path(3), gen.path(4))
    assert a.k == b.k == 8


def test_heat_power_stack_identity_channel():
    literal = encode("power:heat,2,literal", gen.path(3))
    assert np.allclose(literal.values[:, :, 0], np.eye(3))
    reconstruction = encode("power:heat,2", gen.path(3))
    assert np.allclose(reconstruction.values[:, :, 0], np.eye(3) - np.full((3, 3), 1.0 / 3.0))


def test_diagonal_augmentation_prepends_identity():
    psi = encode("diag+adjacency", gen.cycle(4))
    assert psi.k == 2
    assert has_identity_channel(psi)
    assert psi.metadata["augmentations"] == [AugmentKind.DIAGONAL.value]


def test_combinatorial_augmentation_prepends_adjacency():
    g = gen.path(3)
    psi = encode("comb+spd", g)
    assert np.array_equal(psi.as_float()[:, :, 0], np.asarray(g.adjacency, dtype=float))


def test_magnetic_laplacian_channels():
    psi = encode("magnetic:0.25", gen.directed_cycle(3))
    re, im = psi.values[:, :, 0], psi.values[:, :, 1]
    assert np.allclose(re, re.T)
    assert np.allclose(im, -im.T)
    assert not np.allclose(im, 0.0)


def test_magnetic_requires_a_directed_graph():
    with pytest.raises(EncodingError):
        encode("magnetic:0.25", gen.cycle(3))


def test_directed_stack():
    g = gen.transitive_tournament(3)
    psi = encode("directed_stack", g)
    assert psi.k == 3
    assert np.array_equal(psi.values[:, :, 2], psi.values[:, :, 1].T)


def test_rwse_diagonals():
    phi = encode("rwse:1-2", gen.cycle(4))
    assert phi.l == 2
    assert np.allclose(phi.as_float()[:, 0], 0.0)
    assert np.allclose(phi.as_float()[:, 1], 0.5)


def test_degree_ape():
    phi = encode("degree", gen.star(3))
    assert phi.exact
    assert [int(x) for x in phi.values[:, 0]] == [3, 1, 1, 1]


@pytest.mark.parametrize("text", ["", "bogus", "diag+degree", "pair", "power:adjacency,many", "heat:soon"])
def test_bad_specs(text):
    with pytest.raises(EncodingError):
        encode(text, gen.cycle(4))


def test_spec_parsing():
    spec = parse_encoding("diag+comb+rd")
    assert spec.kind == "rpe" and spec.base == "resistance"
    assert spec.augmentations == [AugmentKind.DIAGONAL, AugmentKind.COMBINATORIAL]
    assert parse_encoding("canonical:diag+spd").params == ["diag+spd"]


def test_encoding_dict_round_trip_keeps_exact_values():
    psi = encode("power:adjacency,2", gen.cycle(4))
    back = encoding_from_dict(encoding_to_dict(psi))
    assert back.exact and back.name == psi.name
    assert np.array_equal(back.as_float(), psi.as_float())


@pytest.mark.parametrize(
    "text",
    ["adjacency", "sym_norm_laplacian", "spd", "resistance", "pinv", "kernel:exp", "distance:inv", "heat:1,2", "power:laplacian,3", "rspe:inv0"],
)
def test_relative_encodings_are_permutation_equivariant(text):
    for g, p in PERMUTED_GRAPHS:
        psi, psi_p = encode(text, g), encode(text, apply_permutation(g, p))
        assert np.allclose(psi_p.as_float(), permute_rpe_values(psi.as_float(), p), atol=1e-9), (text, g.edges)


@pytest.mark.parametrize("text", ["degree", "rwse:1-4", "hkdiagse:1,2"])
def test_absolute_encodings_are_permutation_equivariant(text):
    for g, p in PERMUTED_GRAPHS:
        phi, phi_p = encode(text, g), encode(text, apply_permutation(g, p))
        assert np.allclose(phi_p.as_float(), permute_rows(phi.as_float(), p), atol=1e-9), (text, g.edges)


def test_resistance_is_squared_distance_between_rows_of_the_pseudoinverse_root():
    graphs = [g for g in (gen.gnp(4 + i % 7, 0.6, seed=40 + i) for i in range(20)) if is_connected(g)]
    assert graphs
    for g in graphs:
        root = spectral_processor.spectral_apply(
            None, lambda x: x**-0.5, skip_zero=True, decomposition=operator_decomposition(g)
        )
        diff = root[:, None, :] - root[None, :, :]
        rd = rpe_resistance(g).values[:, :, 0]
        assert np.allclose(rd, (diff**2).sum(axis=2), atol=1e-9)


def test_heat_kernel_on_c4():
    # Laplacian spectrum 0, 2, 2, 4 with Fourier eigenvectors.
    h = encode("heat:1,2", gen.cycle(4)).as_float()
    for channel, t in enumerate((1.0, 2.0)):
        a, b = math.exp(-2.0 * t), math.exp(-4.0 * t)
        assert h[0, 0, channel] == pytest.approx((2 * a + b) / 4, abs=1e-12)
        assert h[0, 1, channel] == pytest.approx(-b / 4, abs=1e-12)
        assert h[0, 2, channel] == pytest.approx((b - 2 * a) / 4, abs=1e-12)
    assert np.allclose(h.sum(axis=1), 0.0, atol=1e-12)


def test_heat_diagonal_ape_on_k2():
    phi = encode("hkdiagse:1", gen.complete(2))
    assert np.allclose(phi.as_float()[:, 0], math.exp(-2.0) / 2.0, atol=1e-12)
