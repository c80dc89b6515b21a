"""``gen``: write a member of a graph family as an edge list (pairs as a corpus line)."""

import argparse
import inspect
import io
import logging
from typing import Any, Dict

import jsonlines

from posenc_wl.cli.dependencies import emit
from posenc_wl.core.config import Settings
from posenc_wl.graphs.core import as_featured
from posenc_wl.graphs.generators import FAMILIES, generate
from posenc_wl.models.schemas import CorpusPairRecord
from posenc_wl.validators.corpus_file import corpus_file_validator
from posenc_wl.validators.edge_list import write_edge_list

logger = logging.getLogger(__name__)


def register(sub: argparse._SubParsersAction, parents) -> None:
    p = sub.add_parser("gen", parents=parents, help="generate a graph")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--n", type=int)
    p.add_argument("--skip", "--s", dest="s", type=int, help="CSL chord skip")
    p.add_argument("--p", type=float, help="edge probability")
    p.add_argument("--k", type=int, help="number of cycles (cycle_union)")
    p.add_argument("--m", type=int, help="cycle length (cycle_union)")


def family_params(args: argparse.Namespace, settings: Settings) -> Dict[str, Any]:
    accepted = inspect.signature(FAMILIES[args.family]).parameters
    values = {"n": args.n, "s": args.s, "p": args.p, "k": args.k, "m": args.m, "seed": settings.SEED}
    return {k: v for k, v in values.items() if k in accepted and v is not None}


def handle(args: argparse.Namespace, settings: Settings) -> int:
    params = family_params(args, settings)
    result = generate(args.family, **params)
    if isinstance(result, tuple):
        a, b = (as_featured(g) for g in result)
        record = CorpusPairRecord(
            pair_id=args.family,
            provenance=f"gen --family {args.family}",
            a=corpus_file_validator.to_record(a),
            b=corpus_file_validator.to_record(b),
        )
        buf = io.StringIO()
        with jsonlines.Writer(buf, sort_keys=True, compact=True) as writer:
            writer.write(record.model_dump(mode="json"))
        text = buf.getvalue()
    else:
        text = write_edge_list(result)
    logger.info(f"Generated {args.family} with {params}")
    emit(text, args.output)
    return 0
