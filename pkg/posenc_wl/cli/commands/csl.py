"""``csl``: psi-WL distinguishability table on the CSL classes."""

import argparse

from posenc_wl.cli.dependencies import emit
from posenc_wl.core.config import Settings
from posenc_wl.harness.csl import CSL_ENCODINGS, csl_experiment
from posenc_wl.harness.reports import render


def register(sub: argparse._SubParsersAction, parents) -> None:
    p = sub.add_parser("csl", parents=parents, help="CSL pairwise distinguishability table")
    p.add_argument("--encoding", dest="encodings", nargs="+", action="extend", help="encoding specs")


def handle(args: argparse.Namespace, settings: Settings) -> int:
    table = csl_experiment(args.encodings or CSL_ENCODINGS, jobs=settings.JOBS)
    emit(render(table), args.output)
    return 0
