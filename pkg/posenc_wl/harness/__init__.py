"""Corpora, encoding registry, dominance grids, verifiers and reports."""

from posenc_wl.harness.corpus import Corpus, CorpusPair, build_corpus
from posenc_wl.harness.csl import csl_experiment
from posenc_wl.harness.dominance import dominance_matrix
from posenc_wl.harness.registry import encode, encode_pair, parse_encoding
from posenc_wl.harness.verifiers import VERIFIERS, verify, verify_all

__all__ = [
    "Corpus",
    "CorpusPair",
    "VERIFIERS",
    "build_corpus",
    "csl_experiment",
    "dominance_matrix",
    "encode",
    "encode_pair",
    "parse_encoding",
    "verify",
    "verify_all",
]
