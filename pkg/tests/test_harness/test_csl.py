import pytest

from posenc_wl.harness.csl import CSL_ENCODINGS, csl_experiment


@pytest.mark.slow
def test_csl_table(settings):
    table = csl_experiment()
    assert table.n == 41 and len(table.skips) == 10
    assert [r.encoding for r in table.rows] == list(CSL_ENCODINGS)
    assert all(r.total == 45 for r in table.rows)
    assert table.row("adjacency").distinguished == 0
    for encoding in ("resistance", "rspe:inv0", "power:sym_norm_adjacency,20"):
        row = table.row(encoding)
        assert row.distinguished == 45, encoding
        assert row.undistinguished_pairs == []
    spd = table.row("spd")
    assert spd.distinguished < 45
    assert spd.undistinguished_pairs


def test_small_csl_family(settings):
    table = csl_experiment(["adjacency"], n=11, skips=[2, 3])
    row = table.row("adjacency")
    assert row.total == 1
    assert row.distinguished == 0
    assert row.undistinguished_pairs == [(2, 3)]
