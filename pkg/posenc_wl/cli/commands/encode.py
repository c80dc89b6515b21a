"""``encode``: compute one positional encoding of a graph."""

import argparse
from typing import Optional

from posenc_wl.cli.dependencies import dump_json, emit, read_graph
from posenc_wl.core.config import Settings
from posenc_wl.core.exceptions import CliUsageError
from posenc_wl.harness.registry import encode, parse_encoding
from posenc_wl.processors.encodings import encoding_to_dict


def add_encoding_flags(p: argparse.ArgumentParser, required: bool) -> None:
    group = p.add_mutually_exclusive_group(required=required)
    group.add_argument("--rpe", help="relative encoding spec, e.g. resistance or diag+adjacency")
    group.add_argument("--ape", help="absolute encoding spec, e.g. degree or rwse:1-4")


def encoding_spec(args: argparse.Namespace) -> Optional[str]:
    """The encoding given by ``--rpe``/``--ape``, checked against the flag's kind."""
    for flag, kind in (("rpe", "rpe"), ("ape", "ape")):
        text = getattr(args, flag, None)
        if text:
            if parse_encoding(text).kind != kind:
                raise CliUsageError(f"--{flag} expects a {kind.upper()} spec, got {text!r}")
            return text
    return None


def register(sub: argparse._SubParsersAction, parents) -> None:
    p = sub.add_parser("encode", parents=parents, help="compute a positional encoding")
    add_encoding_flags(p, required=True)
    p.add_argument("-i", "--input", required=True, help="edge-list file ('-' for stdin)")


def handle(args: argparse.Namespace, settings: Settings) -> int:
    g = read_graph(args.input)
    result = encode(encoding_spec(args), g)
    emit(dump_json(encoding_to_dict(result)), args.output)
    return 0
