import numpy as np
import pytest

from posenc_wl.core.exceptions import EncodingError, RefinementError
from posenc_wl.graphs import generators as gen
from posenc_wl.graphs.core import apply_permutation, random_permutation
from posenc_wl.harness.corpus import random_corpus
from posenc_wl.harness.registry import encode, encode_pair
from posenc_wl.models.schemas import TestKind
from posenc_wl.processors.refine import (
    compare,
    is_combinatorially_aware,
    is_diagonally_aware,
    multiset_square_equal,
    partition_signature,
    rpe_2_wl,
    rpe_aug_wl,
    wl_classical,
)


def _verdict(a, b, encoding, test="psi_wl"):
    ea, eb = encode_pair(encoding, a, b)
    return compare(a, b, test, ea, eb, name=encoding)


def test_classical_wl_refines_by_degree():
    history = wl_classical(gen.triangle_pendant())
    assert history.class_count(0) == 1
    assert history.class_count(1) == 3


def test_adjacency_wl_separates_fig_a_at_round_one(fig_a):
    verdict = _verdict(*fig_a, "adjacency")
    assert verdict.distinguishable
    assert verdict.separating_round == 1


def test_c4_stays_monochromatic_under_adjacency():
    g = gen.cycle(4)
    history = rpe_aug_wl(g, encode("adjacency", g))
    assert history.class_count(history.stable_round) == 1


def test_raw_adjacency_multisets_agree_on_fig_a(fig_a):
    assert not _verdict(*fig_a, "adjacency", test="raw_rpe").distinguishable


def test_spd_separates_c6_from_two_triangles():
    a, b = gen.cycle(6), gen.cycle_union(2, 3)
    assert not compare(a, b, TestKind.CLASSICAL).distinguishable
    verdict = _verdict(a, b, "spd")
    assert verdict.distinguishable and verdict.separating_round == 1


def test_resistance_on_c4_colors_pairs_by_type():
    g = gen.cycle(4)
    history = rpe_2_wl(g, encode("resistance", g))
    final = history.final
    diagonal = {history.color(history.stable_round, v, v) for v in range(4)}
    adjacent = {history.color(history.stable_round, 0, 1), history.color(history.stable_round, 1, 2)}
    opposite = {history.color(history.stable_round, 0, 2), history.color(history.stable_round, 1, 3)}
    assert len(diagonal) == len(adjacent) == len(opposite) == 1
    assert len(set(final)) == 3


@pytest.mark.parametrize("encoding", ["adjacency", "spd", "resistance", "diag+adjacency"])
def test_permuted_copies_are_indistinguishable(encoding):
    g = gen.c4_pendant()
    h = apply_permutation(g, random_permutation(g.n, seed=4))
    for test in ("psi_wl", "psi_2wl", "raw_rpe"):
        assert not _verdict(g, h, encoding, test).distinguishable


@pytest.mark.parametrize("encoding", ["spd", "resistance", "kernel:exp", "distance:inv"])
def test_strongly_regular_pair_is_not_over_claimed(encoding):
    a, b = gen.shrikhande(), gen.rook4x4()
    assert not compare(a, b, TestKind.CLASSICAL).distinguishable
    assert not _verdict(a, b, encoding).distinguishable


def test_featured_c4_is_separated_by_two_wl():
    a, b = gen.featured_c4_pair()
    assert _verdict(a, b, "adjacency", "psi_2wl").distinguishable


def test_two_wl_size_limit(settings, monkeypatch):
    monkeypatch.setattr(settings, "TWO_WL_MAX_N", 3)
    g = gen.cycle(4)
    with pytest.raises(RefinementError):
        rpe_2_wl(g, encode("adjacency", g))


def test_compare_requires_encodings(fig_a):
    with pytest.raises(EncodingError):
        compare(*fig_a, "psi_wl")


def test_compare_rejects_mismatched_channels(fig_a):
    a, b = fig_a
    with pytest.raises(EncodingError):
        compare(a, b, "psi_wl", encode("adjacency", a), encode("diag+adjacency", b))


def test_history_serializes_rounds():
    g = gen.path(3)
    data = rpe_aug_wl(g, encode("spd", g)).to_dict()
    assert data["kind"] == "node"
    assert len(data["rounds"]) == data["stable_round"] + 1
    assert len(data["histograms"]) == len(data["rounds"])


def test_partition_signature_ignores_color_names():
    assert partition_signature([b"x", b"y", b"x"]) == partition_signature([b"q", b"r", b"q"]) == (0, 1, 0)


def test_multiset_square_equality():
    assert multiset_square_equal([1, 2, 2], [2, 1, 2])
    assert not multiset_square_equal([1, 2, 2], [1, 1, 2])


def test_awareness():
    g = gen.c4_pendant()
    assert is_combinatorially_aware([(g, encode("spd", g))])
    assert is_diagonally_aware([(g, encode("spd", g))])
    assert not is_diagonally_aware([(g, encode("adjacency", g))])
    assert not is_combinatorially_aware([(g, encode("resistance", g))])


RANDOM_SMALL = [gen.gnp(3 + i % 6, 0.45, seed=200 + i) for i in range(50)]


def _partitions(history):
    return [history.partition(t) for t in range(len(history.rounds))]


def _refines(fine, coarse):
    seen = {}
    return all(seen.setdefault(x, y) == y for x, y in zip(fine, coarse))


def test_adjacency_wl_matches_classical_wl_round_by_round():
    for g in RANDOM_SMALL:
        assert _partitions(rpe_aug_wl(g, encode("adjacency", g))) == _partitions(wl_classical(g)), g.edges


def test_adjacency_wl_and_classical_wl_give_the_same_verdicts():
    for pair in random_corpus(8, 30, seed=5):
        a, b = pair.a, pair.b
        assert _verdict(a, b, "adjacency").distinguishable == compare(a, b, "classical").distinguishable, pair.pair_id


@pytest.mark.parametrize("encoding", ["spd", "power:adjacency,3"])
@pytest.mark.parametrize("f", [lambda x: x * x, lambda x: min(x, 2)], ids=["square", "clamp"])
def test_scalar_maps_never_split_classes(encoding, f):
    for g in RANDOM_SMALL:
        psi = encode(encoding, g)
        mapped = psi.with_values(np.frompyfunc(f, 1, 1)(psi.values))
        fine, coarse = rpe_aug_wl(g, psi), rpe_aug_wl(g, mapped)
        assert _refines(fine.final, coarse.final), g.edges


def test_class_counts_never_decrease():
    for g in RANDOM_SMALL[:20]:
        for history in (wl_classical(g), rpe_aug_wl(g, encode("spd", g)), rpe_2_wl(g, encode("adjacency", g))):
            counts = [history.class_count(t) for t in range(len(history.rounds))]
            assert counts == sorted(counts)
            assert history.partition(history.stable_round) == history.partition(history.stable_round - 1)


@pytest.mark.parametrize("seed", range(50))
def test_random_permuted_copies_are_never_separated(seed):
    g = gen.gnp(4 + seed % 6, 0.45, seed=seed)
    h = apply_permutation(g, random_permutation(g.n, seed=1000 + seed))
    assert not compare(g, h, "classical").distinguishable
    for encoding in ("adjacency", "spd", "resistance"):
        assert not _verdict(g, h, encoding).distinguishable
        assert not _verdict(g, h, encoding, "raw_rpe").distinguishable
    assert not _verdict(g, h, "spd", "psi_2wl").distinguishable
