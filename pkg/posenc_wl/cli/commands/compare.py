"""``compare``: one indistinguishability test on two graphs; the exit code is the verdict."""

import argparse

from posenc_wl.cli.commands.encode import add_encoding_flags, encoding_spec
from posenc_wl.cli.dependencies import emit, read_graph
from posenc_wl.core.config import Settings
from posenc_wl.core.exceptions import CliUsageError
from posenc_wl.harness.registry import encode_pair
from posenc_wl.harness.reports import render
from posenc_wl.models.schemas import TestKind
from posenc_wl.processors.refine import compare


def register(sub: argparse._SubParsersAction, parents) -> None:
    p = sub.add_parser("compare", parents=parents, help="compare two graphs under one test")
    p.add_argument("--test", required=True, choices=[t.value for t in TestKind])
    add_encoding_flags(p, required=False)
    p.add_argument("-a", required=True, dest="graph_a", help="first edge-list file")
    p.add_argument("-b", required=True, dest="graph_b", help="second edge-list file")


def handle(args: argparse.Namespace, settings: Settings) -> int:
    """Exit 0 when the graphs are indistinguishable, 1 when some round separates them."""
    test = TestKind(args.test)
    spec = encoding_spec(args)
    if test != TestKind.CLASSICAL and spec is None:
        raise CliUsageError(f"--test {test.value} needs --rpe or --ape")
    a, b = read_graph(args.graph_a, "-a"), read_graph(args.graph_b, "-b")
    if test == TestKind.CLASSICAL:
        verdict = compare(a, b, test)
    else:
        ea, eb = encode_pair(spec, a, b)
        verdict = compare(a, b, test, ea, eb, name=spec)
    emit(render(verdict), args.output)
    return 1 if verdict.distinguishable else 0
