import pytest

from posenc_wl.core.exceptions import EdgeListParseError
from posenc_wl.graphs import generators as gen
from posenc_wl.graphs.core import featured
from posenc_wl.validators.edge_list import edge_list_validator, read_edge_list, write_edge_list


def test_parse_with_comments_and_features():
    text = "# triangle with labels\n3 3 1 0\n0 1\n1 2\n\n2 0\n0.5\n1.5\n2.5\n"
    g = read_edge_list(text)
    assert g.n == 3 and g.graph.edge_count == 3
    assert g.features[:, 0].tolist() == [0.5, 1.5, 2.5]


def test_format_writes_each_undirected_edge_once():
    text = write_edge_list(gen.path(3))
    assert text == "3 2 0 0\n0 1\n1 2\n"


def test_written_featured_graph_parses_back():
    g = featured(gen.cycle(4), [1.0, 2.0, 3.0, 4.0])
    assert read_edge_list(write_edge_list(g)).features.tolist() == g.features.tolist()


def test_file_io(tmp_path):
    path = tmp_path / "g.txt"
    edge_list_validator.write(gen.directed_cycle(3), path)
    g = edge_list_validator.read(path)
    assert g.graph.directed and g.graph.edge_count == 3


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("3 1 0\n0 1\n", 1),
        ("3 1 0 2\n0 1\n", 1),
        ("# header next\n3 1 0 0\n0 x\n", 3),
        ("3 2 0 0\n0 1\n", 3),
        ("3 1 0 0\n0 1\n1 2\n", 3),
        ("3 1 0 0\n1 1\n", 2),
        ("3 2 0 0\n0 1\n1 5\n", 3),
        ("2 1 1 0\n0 1\n1.0\ninf\n", 4),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(EdgeListParseError) as exc_info:
        read_edge_list(text)
    assert exc_info.value.line == line
    assert exc_info.value.details["line"] == line


def test_validate_reports_without_raising():
    ok, message = edge_list_validator.validate("2 1 0 0\n0 1\n")
    assert ok and message is None
    ok, message = edge_list_validator.validate("2 1 0 0\n0 0\n")
    assert not ok and "line 2" in message
