"""``refine``: print the color history of one refinement engine on a graph."""

import argparse

from posenc_wl.cli.commands.encode import encoding_spec
from posenc_wl.cli.dependencies import dump_json, emit, read_graph
from posenc_wl.core.config import Settings
from posenc_wl.core.exceptions import CliUsageError
from posenc_wl.harness.registry import encode
from posenc_wl.processors.refine import rpe_2_wl, rpe_aug_wl, wl_classical

ENGINES = ("wl", "psi_wl", "psi_2wl")


def register(sub: argparse._SubParsersAction, parents) -> None:
    p = sub.add_parser("refine", parents=parents, help="run a refinement engine to stability")
    p.add_argument("--engine", choices=ENGINES, default="wl")
    p.add_argument("--rpe", help="relative encoding spec (psi_wl and psi_2wl)")
    p.add_argument("-i", "--input", required=True, help="edge-list file ('-' for stdin)")


def handle(args: argparse.Namespace, settings: Settings) -> int:
    if args.engine != "wl" and not args.rpe:
        raise CliUsageError(f"--engine {args.engine} needs --rpe")
    spec = encoding_spec(args)
    g = read_graph(args.input)
    if args.engine == "wl":
        history = wl_classical(g)
    else:
        psi = encode(spec, g)
        history = rpe_aug_wl(g, psi) if args.engine == "psi_wl" else rpe_2_wl(g, psi)
    emit(dump_json(history.to_dict()), args.output)
    return 0
