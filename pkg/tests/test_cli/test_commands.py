import io
import json

from posenc_wl.graphs import generators as gen
from posenc_wl.graphs.core import apply_permutation, random_permutation
from posenc_wl.harness.verifiers import VERIFIERS, PairOutcome, Verifier


def test_gen_writes_an_edge_list(cli):
    code, out, _ = cli("gen", "--family", "csl", "--n", 41, "--skip", 2)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "41 82 0 0"
    assert len(lines) == 83


def test_gen_writes_pairs_as_a_corpus_line(cli):
    code, out, _ = cli("gen", "--family", "featured_c4_pair")
    assert code == 0
    record = json.loads(out)
    assert record["pair_id"] == "featured_c4_pair"
    assert record["a"]["features"] == [[1.0], [2.0], [3.0], [4.0]]


def test_gen_to_file(cli, tmp_path):
    path = tmp_path / "c5.txt"
    code, out, _ = cli("gen", "--family", "cycle", "--n", 5, "-o", path)
    assert code == 0 and out == ""
    assert path.read_text().startswith("5 5 0 0\n")


def test_gen_missing_parameter(cli, error_body):
    code, _, err = cli("gen", "--family", "cycle")
    assert code == 2
    assert error_body(err)["error"] == "GraphGenerationError"


def test_compare_separates_fig_a(cli, write_graph, fig_a):
    a, b = (write_graph(name, g) for name, g in zip("ab", fig_a))
    code, out, _ = cli("compare", "--test", "psi_wl", "--rpe", "adjacency", "-a", a, "-b", b)
    assert code == 1
    verdict = json.loads(out)
    assert verdict["distinguishable"] and verdict["separating_round"] == 1


def test_compare_permuted_copy(cli, write_graph):
    g = gen.c4_pendant()
    a = write_graph("a", g)
    b = write_graph("b", apply_permutation(g, random_permutation(g.n, seed=2)))
    code, out, _ = cli("compare", "--test", "psi_2wl", "--rpe", "resistance", "-a", a, "-b", b)
    assert code == 0
    assert json.loads(out)["separating_round"] is None


def test_compare_classical_needs_no_encoding(cli, write_graph):
    a, b = write_graph("a", gen.cycle(6)), write_graph("b", gen.cycle_union(2, 3))
    code, _, _ = cli("compare", "--test", "classical", "-a", a, "-b", b)
    assert code == 0


def test_compare_raw_ape(cli, write_graph):
    a, b = write_graph("a", gen.path(4)), write_graph("b", gen.star(3))
    code, out, _ = cli("compare", "--test", "raw_ape", "--ape", "degree", "-a", a, "-b", b, "--format", "csv")
    assert code == 1
    assert out.splitlines()[0].startswith("test,encoding,distinguishable")


def test_compare_needs_an_encoding(cli, write_graph, error_body, fig_a):
    a, b = (write_graph(name, g) for name, g in zip("ab", fig_a))
    code, out, err = cli("compare", "--test", "psi_wl", "-a", a, "-b", b)
    assert code == 2 and out == ""
    assert error_body(err)["error"] == "CliUsageError"


def test_encoding_flag_kind_is_checked(cli, write_graph, error_body):
    g = write_graph("g", gen.path(3))
    code, _, err = cli("encode", "--rpe", "degree", "-i", g)
    assert code == 2
    assert "--rpe" in error_body(err)["message"]


def test_missing_input_file(cli, error_body, tmp_path):
    code, _, err = cli("encode", "--rpe", "spd", "-i", tmp_path / "none.txt")
    assert code == 2
    assert "not found" in error_body(err)["message"]


def test_malformed_input_reports_the_line(cli, error_body, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("3 2 0 0\n0 1\n1 x\n")
    code, _, err = cli("encode", "--rpe", "spd", "-i", path)
    body = error_body(err)
    assert code == 2
    assert body["error"] == "EdgeListParseError"
    assert body["details"]["line"] == 3


def test_argument_errors_use_the_error_body(cli, error_body):
    code, _, err = cli("compare", "-a", "x", "-b", "y")
    assert code == 2
    body = error_body(err)
    assert body["error"] == "CliUsageError"
    assert "usage" in body["details"]


def test_encode_resistance(cli, write_graph):
    code, out, _ = cli("encode", "--rpe", "resistance", "-i", write_graph("c4", gen.cycle(4)))
    assert code == 0
    data = json.loads(out)
    assert data["k"] == 1 and data["n"] == 4
    assert abs(data["values"][0][1][0] - 0.75) < 1e-12


def test_encode_reads_stdin(cli, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("3 2 0 0\n0 1\n1 2\n"))
    code, out, _ = cli("encode", "--ape", "degree", "-i", "-")
    assert code == 0
    assert json.loads(out)["values"] == [[1], [2], [1]]


def test_refine(cli, write_graph, error_body):
    g = write_graph("g", gen.triangle_pendant())
    code, out, _ = cli("refine", "-i", g)
    assert code == 0
    history = json.loads(out)
    assert history["kind"] == "node" and len(set(history["rounds"][1])) == 3

    code, out, _ = cli("refine", "--engine", "psi_2wl", "--rpe", "spd", "-i", g)
    assert code == 0 and json.loads(out)["kind"] == "pair"

    code, _, err = cli("refine", "--engine", "psi_wl", "-i", g)
    assert code == 2 and error_body(err)["error"] == "CliUsageError"


def test_verify_pass(cli, corpus_spec):
    code, out, _ = cli("verify", "--theorem", "C5.4", "--corpus", corpus_spec)
    assert code == 0
    assert json.loads(out)["status"] == "pass"


def test_verify_not_applicable_exits_zero(cli, corpus_spec):
    code, out, _ = cli("verify", "--theorem", "p5.11", "--corpus", corpus_spec, "--format", "csv")
    assert code == 0
    assert out.splitlines()[1].startswith("P5.11,not_applicable")


def test_verify_failure_exits_one(cli, corpus_spec, monkeypatch):
    def contradicted(pair):
        out = PairOutcome(pair.pair_id)
        out.violation("forced")
        return out

    monkeypatch.setitem(VERIFIERS, "C5.4", Verifier("C5.4", "forced", contradicted))
    code, out, _ = cli("verify", "--theorem", "C5.4", "--corpus", corpus_spec)
    assert code == 1
    assert json.loads(out)["label"] == "contradicts C5.4"


def test_verify_unknown_theorem(cli, corpus_spec, error_body):
    code, _, err = cli("verify", "--theorem", "X1", "--corpus", corpus_spec)
    assert code == 2
    assert error_body(err)["error"] == "VerificationError"


def test_dominance(cli, corpus_spec):
    code, out, _ = cli("dominance", "--corpus", corpus_spec, "--encoding", "wl", "spd", "--encoding", "resistance")
    assert code == 0
    report = json.loads(out)
    assert report["encodings"] == ["wl", "spd", "resistance"]
    assert ["spd", "wl"] in report["dominance_edges"]


def test_dominance_jsonl(cli, corpus_spec):
    code, out, _ = cli("dominance", "--corpus", corpus_spec, "--encoding", "wl", "spd", "--format", "jsonl")
    assert code == 0
    assert len(out.splitlines()) == 2


def test_csl(cli, settings, monkeypatch):
    monkeypatch.setattr(settings, "CSL_N", 11)
    monkeypatch.setattr(settings, "CSL_SKIPS", "2,3,4")
    code, out, _ = cli("csl", "--encoding", "adjacency", "spd")
    assert code == 0
    table = json.loads(out)
    assert table["n"] == 11
    assert [r["total"] for r in table["rows"]] == [3, 3]
    assert table["rows"][0]["distinguished"] == 0
