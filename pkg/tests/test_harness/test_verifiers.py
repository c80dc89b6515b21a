import pytest

from posenc_wl.core.exceptions import EncodingError, VerificationError
from posenc_wl.harness import verifiers
from posenc_wl.harness.corpus import build_corpus
from posenc_wl.harness.verifiers import VERIFIERS, PairOutcome, Verifier, get_verifier, verify, verify_all
from posenc_wl.models.schemas import TheoremStatus


def test_resistance_matches_pseudoinverse(settings, small_corpus):
    result = verify("C5.4", small_corpus)
    assert result.status == TheoremStatus.PASS
    assert result.label == "consistent with C5.4"
    assert result.checked_pairs == len(small_corpus)


def test_diagonal_identity(settings, small_corpus):
    result = verify("B-DIAG", small_corpus)
    assert result.status == TheoremStatus.PASS
    assert result.not_applicable_pairs == ["c6_vs_2c3"]
    assert result.metrics["max_abs_error"] < 1e-8


def test_bridges_have_unit_resistance(settings, small_corpus):
    result = verify("B-CUT", small_corpus)
    assert result.status == TheoremStatus.PASS
    assert result.metrics["max_bridge_rd_error"] < 1e-9


def test_featured_c4_witness(settings, small_corpus):
    result = verify("EX4.5", small_corpus)
    assert result.status == TheoremStatus.PASS
    assert result.checked_pairs == 1


def test_controls_are_never_separated(settings, small_corpus):
    result = verify("F3.4", small_corpus)
    assert result.status == TheoremStatus.PASS
    assert result.checked_pairs == 2
    assert "fig_a" in result.not_applicable_pairs


def test_spd_dominates_classical_wl(settings, small_corpus):
    assert verify("T5.13", small_corpus).status == TheoremStatus.PASS


def test_directed_checks_are_not_applicable_to_undirected_pairs(settings, small_corpus):
    result = verify("P5.11", small_corpus)
    assert result.status == TheoremStatus.NOT_APPLICABLE
    assert result.label == "not applicable"
    assert result.checked_pairs == 0


def test_ids_are_case_insensitive():
    assert get_verifier(" c5.4 ").theorem_id == "C5.4"
    with pytest.raises(VerificationError):
        get_verifier("T9.9")


def test_violations_fail_with_reproduction(settings, small_corpus, monkeypatch):
    def contradicted(pair):
        out = PairOutcome(pair.pair_id)
        if pair.pair_id == "fig_a":
            out.violation("forced", criterion="adjacency")
        return out

    monkeypatch.setitem(VERIFIERS, "C5.4", Verifier("C5.4", "forced", contradicted))
    result = verify("C5.4", small_corpus)
    assert result.status == TheoremStatus.FAIL
    assert result.label == "contradicts C5.4"
    [violation] = result.violations
    assert violation.pair_id == "fig_a"
    assert violation.reproduction["corpus"] == "small"
    assert violation.reproduction["theorem"] == "C5.4"


def test_errors_are_recorded_as_failed_pairs(settings, small_corpus, monkeypatch):
    def broken(pair):
        raise EncodingError("boom")

    monkeypatch.setitem(VERIFIERS, "C5.4", Verifier("C5.4", "broken", broken))
    result = verify("C5.4", small_corpus)
    assert result.status == TheoremStatus.FAIL
    assert len(result.failed_pairs) == len(small_corpus)
    assert result.failed_pairs[0].error == "EncodingError"


def test_verify_all_subset(settings, small_corpus):
    results = verify_all(small_corpus, ["C5.4", "P5.11"])
    assert [r.theorem_id for r in results] == ["C5.4", "P5.11"]


def test_every_verifier_is_registered_once():
    assert len(VERIFIERS) == 18
    assert all(v.check is not None or v.witness is not None for v in VERIFIERS.values())
    assert verifiers.GT_TOL == 1e-6


@pytest.mark.parametrize(
    "theorem_id", ["T3.5", "T4.2", "T4.4", "T5.3", "T5.6", "T5.7", "T5.8", "T5.9", "P5.10", "P5.15", "L3.6"]
)
def test_verifier_holds_on_small_pairs(settings, small_corpus, theorem_id):
    result = verify(theorem_id, small_corpus)
    assert result.violations == []
    assert result.failed_pairs == []
    assert result.status == TheoremStatus.PASS


def test_rd_collision_witness_is_reported(settings, small_corpus):
    result = verify("P5.15", small_corpus)
    assert result.checked_pairs == len(small_corpus) + 1
    collision = result.metrics["rd_collision"]
    assert collision["edge"] != collision["non_edge"]


@pytest.mark.parametrize("theorem_id", ["T4.4", "T5.6"])
def test_featured_pairs_are_outside_the_canonical_readouts(settings, theorem_id):
    result = verify(theorem_id, build_corpus("standard"))
    assert result.status == TheoremStatus.PASS
    assert {"featured_c4", "control_featured_c4"} <= set(result.not_applicable_pairs)


def test_directed_stack_dominates_magnetic_laplacian(settings):
    result = verify("P5.11", build_corpus("digraph(5, 6, seed=1)"))
    assert result.violations == []
    assert result.status == TheoremStatus.PASS
    assert result.checked_pairs == 8


# -- acceptance-scale runs ---------------------------------------------------------


@pytest.mark.slow
def test_resistance_matches_pseudoinverse_at_scale(settings):
    corpus = build_corpus("standard+random(10, 200)")
    result = verify("C5.4", corpus)
    assert result.violations == [] and result.failed_pairs == []
    assert result.status == TheoremStatus.PASS
    assert result.checked_pairs == len(corpus)


@pytest.mark.slow
def test_bridges_at_scale(settings):
    result = verify("B-CUT", build_corpus("random(10, 100)"))
    assert result.violations == []
    assert result.status == TheoremStatus.PASS
    assert result.metrics["max_bridge_rd_error"] < 1e-9


@pytest.mark.slow
def test_diagonal_identity_at_scale(settings):
    result = verify("B-DIAG", build_corpus("random(10, 50)"))
    assert result.violations == []
    assert result.checked_pairs == 50
    assert result.metrics["max_abs_error"] < 1e-8


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(10))
def test_transformer_agreement_across_seeds(settings, seed):
    result = verify("L3.6", build_corpus("random(8, 10)", seed=seed))
    assert result.violations == []
    assert result.status == TheoremStatus.PASS


@pytest.mark.slow
def test_directed_stack_at_scale(settings):
    result = verify("P5.11", build_corpus("digraph(7, 40)"))
    assert result.violations == []
    assert result.status == TheoremStatus.PASS
    assert result.checked_pairs == 42
