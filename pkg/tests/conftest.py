"""Shared fixtures."""

import os

# Tests run in-process; worker pools are exercised explicitly where needed.
os.environ.setdefault("POSENC_JOBS", "1")

import pytest  # noqa: E402

from posenc_wl.core.config import get_settings  # noqa: E402
from posenc_wl.graphs import generators as gen  # noqa: E402
from posenc_wl.graphs.core import apply_permutation, as_featured, random_permutation  # noqa: E402
from posenc_wl.harness.corpus import Corpus, CorpusPair  # noqa: E402
from posenc_wl.validators.edge_list import write_edge_list  # noqa: E402


@pytest.fixture
def settings(monkeypatch):
    """The shared settings object; attribute changes are undone after the test."""
    s = get_settings()
    monkeypatch.setattr(s, "JOBS", 1)
    return s


@pytest.fixture
def fig_a():
    return gen.fig_a_pair()


@pytest.fixture
def make_pair():
    def _make(pair_id, a, b, label=""):
        return CorpusPair(pair_id, as_featured(a), as_featured(b), label)

    return _make


@pytest.fixture
def control_of(make_pair):
    def _control(pair_id, g, seed=7):
        fg = as_featured(g)
        return make_pair(pair_id, fg, apply_permutation(fg, random_permutation(fg.n, seed)), "control")

    return _control


@pytest.fixture
def small_corpus(make_pair, control_of):
    """Hand-picked small undirected pairs plus two controls."""
    a, b = gen.fig_a_pair()
    pairs = (
        make_pair("fig_a", a, b),
        make_pair("c6_vs_2c3", gen.cycle(6), gen.cycle_union(2, 3)),
        make_pair("p4_vs_star3", gen.path(4), gen.star(3)),
        control_of("control_c6", gen.cycle(6)),
        control_of("control_pendant", gen.triangle_pendant()),
    )
    return Corpus(name="small", seed=0, pairs=pairs)


@pytest.fixture
def write_graph(tmp_path):
    """Write a graph as an edge-list file and return its path."""

    def _write(name, g):
        path = tmp_path / f"{name}.txt"
        path.write_text(write_edge_list(g), encoding="utf-8")
        return str(path)

    return _write
