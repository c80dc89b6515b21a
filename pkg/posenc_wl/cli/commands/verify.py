"""``verify``: run one named verifier (or all of them) on a corpus."""

import argparse

from posenc_wl.cli.dependencies import emit
from posenc_wl.core.config import Settings
from posenc_wl.harness.corpus import build_corpus
from posenc_wl.harness.reports import render
from posenc_wl.harness.verifiers import VERIFIERS, verify, verify_all
from posenc_wl.models.schemas import TheoremStatus


def register(sub: argparse._SubParsersAction, parents) -> None:
    p = sub.add_parser("verify", parents=parents, help="check a predicted result on a corpus")
    p.add_argument("--theorem", required=True, help=f"one of {', '.join(VERIFIERS)} or 'all'")
    p.add_argument("--corpus", default="standard")


def handle(args: argparse.Namespace, settings: Settings) -> int:
    """Exit 1 when any verifier fails; ``not_applicable`` results do not fail the run."""
    corpus = build_corpus(args.corpus, settings.SEED)
    if args.theorem.strip().lower() == "all":
        results = verify_all(corpus, jobs=settings.JOBS)
        emit(render(results), args.output)
        return 1 if any(r.status == TheoremStatus.FAIL for r in results) else 0
    result = verify(args.theorem, corpus, settings.JOBS)
    emit(render(result), args.output)
    return 1 if result.status == TheoremStatus.FAIL else 0
