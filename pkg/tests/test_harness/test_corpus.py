import json

import pytest

from posenc_wl.core.exceptions import CorpusError
from posenc_wl.harness.corpus import build_corpus, csl_corpus, digraph_corpus, random_corpus
from posenc_wl.validators.corpus_file import corpus_file_validator


def test_csl_corpus_has_every_class_pair():
    pairs = csl_corpus()
    assert len(pairs) == 45
    assert len({p.pair_id for p in pairs}) == 45
    assert all(p.a.n == p.b.n == 41 for p in pairs)


def test_random_corpus_is_deterministic():
    first = build_corpus("random(6,5)", seed=3)
    second = build_corpus("random(6,5)", seed=3)
    assert first.to_records() == second.to_records()
    assert [p.pair_id for p in first.pairs] == [f"random_{i}" for i in range(5)]


def test_random_pairs_share_degree_multisets():
    for pair in random_corpus(7, 8, seed=1):
        assert sorted(pair.a.graph.degrees.tolist()) == sorted(pair.b.graph.degrees.tolist())
    assert random_corpus(7, 5, seed=1)[4].is_control


def test_digraph_corpus_is_directed():
    pairs = digraph_corpus(5, 3, seed=0)
    assert pairs[0].pair_id == "dc3_vs_tt3"
    assert all(p.directed for p in pairs)
    assert pairs[1].is_control


def test_terms_combine():
    corpus = build_corpus("csl + digraph(4, 2, seed=9)")
    assert len(corpus) == 45 + 4
    assert corpus.pair("dc3_vs_tt3").directed


def test_pair_lookup_misses():
    with pytest.raises(KeyError):
        build_corpus("csl").pair("nope")


@pytest.mark.parametrize(
    "spec",
    ["csl+csl", "bogus", "random(", "random(a,b)", "random(6,5,depth=2)", "random(6,5,1,2)", "file()", "random(3,2)"],
)
def test_bad_corpus_specs(spec):
    with pytest.raises(CorpusError):
        build_corpus(spec, seed=0)


def test_file_corpus_round_trip(tmp_path, small_corpus):
    path = tmp_path / "pairs.jsonl"
    corpus_file_validator.write(small_corpus.to_records(), path)
    loaded = build_corpus(f"file({path})")
    assert [p.pair_id for p in loaded.pairs] == [p.pair_id for p in small_corpus.pairs]
    assert loaded.pair("control_c6").is_control
    assert loaded.pair("fig_a").b.graph == small_corpus.pair("fig_a").b.graph


def test_corpus_file_errors_carry_line_numbers(tmp_path):
    path = tmp_path / "bad.jsonl"
    good = {"pair_id": "x", "a": {"n": 2, "edges": [[0, 1]]}, "b": {"n": 2, "edges": [[0, 1]]}}
    path.write_text(json.dumps(good) + "\n" + json.dumps({"pair_id": "y"}) + "\n", encoding="utf-8")
    with pytest.raises(CorpusError) as exc_info:
        corpus_file_validator.read(path)
    assert exc_info.value.details["line"] == 2


def test_corpus_file_rejects_invalid_graphs(tmp_path):
    path = tmp_path / "loop.jsonl"
    bad = {"pair_id": "loop", "a": {"n": 2, "edges": [[1, 1]]}, "b": {"n": 2, "edges": [[0, 1]]}}
    path.write_text(json.dumps(bad) + "\n", encoding="utf-8")
    ok, message = corpus_file_validator.validate(path)
    assert not ok and "loop" in message
    with pytest.raises(CorpusError):
        build_corpus(f"file({path})")


def test_missing_corpus_file(tmp_path):
    with pytest.raises(CorpusError):
        build_corpus(f"file({tmp_path / 'absent.jsonl'})")


@pytest.mark.slow
def test_standard_corpus_contents():
    corpus = build_corpus("standard", seed=0)
    ids = {p.pair_id for p in corpus.pairs}
    assert {"fig_a", "featured_c4", "c6_vs_2c3", "shrikhande_vs_rook", "control_c6"} <= ids
    assert corpus.pair("featured_c4").is_featured
    assert all(p.is_control for p in corpus.pairs if p.pair_id.startswith("control_"))


def test_plus_inside_a_file_path_is_not_a_separator(tmp_path, small_corpus):
    path = tmp_path / "a+b.jsonl"
    corpus_file_validator.write(small_corpus.to_records(), path)
    loaded = build_corpus(f"file({path})")
    assert len(loaded) == len(small_corpus)
    combined = build_corpus(f"file({path}) + digraph(4, 1, seed=2)")
    assert len(combined) == len(small_corpus) + 3
    assert combined.pair("dc3_vs_tt3").directed
