"""CLI sub-commands; each module exposes ``register`` and ``handle``."""

from posenc_wl.cli.commands import compare, csl, dominance, encode, gen, refine, verify

COMMANDS = {
    "gen": gen,
    "encode": encode,
    "refine": refine,
    "compare": compare,
    "dominance": dominance,
    "verify": verify,
    "csl": csl,
}
