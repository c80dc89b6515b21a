"""``dominance``: encoding-vs-encoding verdict grid over a corpus."""

import argparse

from posenc_wl.cli.dependencies import emit
from posenc_wl.core.config import Settings
from posenc_wl.harness.corpus import build_corpus
from posenc_wl.harness.dominance import dominance_matrix
from posenc_wl.harness.reports import render
from posenc_wl.models.schemas import EngineKind

DEFAULT_ENCODINGS = ["wl", "adjacency", "spd", "resistance", "pinv"]


def register(sub: argparse._SubParsersAction, parents) -> None:
    p = sub.add_parser("dominance", parents=parents, help="pairwise dominance grid over a corpus")
    p.add_argument("--corpus", default="standard")
    p.add_argument(
        "--encoding",
        dest="encodings",
        nargs="+",
        action="extend",
        help="encoding specs ('wl' for classical WL); repeatable",
    )
    p.add_argument("--engine", choices=[e.value for e in EngineKind], default=EngineKind.PSI_WL.value)


def handle(args: argparse.Namespace, settings: Settings) -> int:
    corpus = build_corpus(args.corpus, settings.SEED)
    report = dominance_matrix(corpus, args.encodings or DEFAULT_ENCODINGS, args.engine, settings.JOBS)
    emit(render(report), args.output)
    return 0
