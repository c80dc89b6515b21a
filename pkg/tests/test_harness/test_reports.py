import json

import pandas as pd
import pytest

from posenc_wl.core.exceptions import PosEncError
from posenc_wl.harness.dominance import dominance_matrix
from posenc_wl.harness.reports import render, write_report
from posenc_wl.harness.verifiers import verify
from posenc_wl.models.schemas import CslRow, CslTable, ReportFormat


@pytest.fixture
def theorem_result(settings, small_corpus):
    return verify("C5.4", small_corpus)


def test_json_is_the_full_model(theorem_result):
    data = json.loads(render(theorem_result, "json"))
    assert data["theorem_id"] == "C5.4"
    assert data["status"] == "pass"
    assert "tolerances" in data


def test_rendering_is_repeatable(theorem_result):
    assert render(theorem_result, "json") == render(theorem_result, "json")


def test_lists_render_as_arrays_and_streams(settings, small_corpus):
    results = [verify("C5.4", small_corpus), verify("P5.11", small_corpus)]
    assert len(json.loads(render(results, ReportFormat.JSON))) == 2
    lines = render(results, ReportFormat.JSONL).splitlines()
    assert [json.loads(line)["theorem_id"] for line in lines] == ["C5.4", "P5.11"]


def test_dominance_csv_has_one_row_per_cell(settings, small_corpus, tmp_path):
    report = dominance_matrix(small_corpus, ["wl", "spd"])
    path = tmp_path / "grid.csv"
    write_report(report, path, "csv")
    frame = pd.read_csv(path)
    assert list(frame.columns[:2]) == ["row", "col"]
    assert len(frame) == 2
    row = frame[(frame.row == "spd") & (frame.col == "wl")].iloc[0]
    assert row.only_row == 1 and row.only_row_pairs == "c6_vs_2c3"


def test_csl_csv():
    table = CslTable(
        schema_version="1.0",
        n=41,
        skips=[2, 3],
        rows=[CslRow(encoding="resistance", distinguished=1, total=1)],
    )
    assert render(table, "csv") == "encoding,distinguished,total,fraction\nresistance,1,1,1.0\n"


def test_default_format_follows_settings(settings, monkeypatch, theorem_result):
    monkeypatch.setattr(settings, "REPORT_FORMAT", "csv")
    assert render(theorem_result).startswith("theorem_id,status,label")


def test_unwritable_destination(theorem_result, tmp_path):
    with pytest.raises(PosEncError):
        write_report(theorem_result, tmp_path / "missing" / "out.json")
