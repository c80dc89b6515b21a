import numpy as np
import pytest

from posenc_wl.core.exceptions import GraphValidationError
from posenc_wl.graphs import generators as gen
from posenc_wl.graphs.core import (
    apply_permutation,
    brute_force_isomorphic,
    featured,
    from_edge_list,
    is_connected,
    random_permutation,
)
from posenc_wl.models.graph import Permutation


def test_undirected_edges_are_symmetrized_and_deduplicated():
    g = from_edge_list(3, False, [(0, 1), (1, 0), (1, 2)])
    assert g.edges == ((0, 1), (1, 0), (1, 2), (2, 1))
    assert g.edge_count == 2
    assert g.degrees.tolist() == [1, 2, 1]


def test_directed_edges_keep_orientation():
    g = from_edge_list(3, True, [(0, 1), (1, 2)])
    assert g.edge_count == 2
    assert not g.has_edge(1, 0)


@pytest.mark.parametrize("pairs", [[(0, 0)], [(0, 3)], [(-1, 1)]])
def test_invalid_edges_rejected(pairs):
    with pytest.raises(GraphValidationError):
        from_edge_list(3, False, pairs)


def test_feature_rows_must_match_vertex_count():
    with pytest.raises(GraphValidationError):
        featured(gen.path(3), [[1.0], [2.0]])


def test_non_finite_features_rejected():
    with pytest.raises(GraphValidationError):
        featured(gen.path(2), [1.0, float("nan")])


def test_permutation_moves_edges_and_features():
    g = featured(gen.path(3), [1.0, 2.0, 3.0])
    p = Permutation((2, 0, 1))
    h = apply_permutation(g, p)
    assert h.graph.has_edge(2, 0) and h.graph.has_edge(0, 1)
    assert h.features[:, 0].tolist() == [2.0, 3.0, 1.0]


def test_permutation_inverse_round_trips():
    p = random_permutation(6, seed=3)
    assert p.inverse().inverse() == p
    assert [p.inverse()(p(v)) for v in range(6)] == list(range(6))


def test_permuted_copy_is_isomorphic():
    g = gen.c4_pendant()
    h = apply_permutation(g, random_permutation(g.n, seed=11))
    assert brute_force_isomorphic(g, h)
    assert not brute_force_isomorphic(*gen.fig_a_pair())


def test_connectivity():
    assert is_connected(gen.cycle(6))
    assert not is_connected(gen.cycle_union(2, 3))


def test_permutation_matrix_acts_on_columns():
    p = Permutation((1, 2, 0))
    x = np.array([10.0, 20.0, 30.0])
    assert (p.matrix() @ x).tolist() == [30.0, 10.0, 20.0]
