"""psi-WL pairwise distinguishability of the CSL classes."""

import logging
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from posenc_wl.core.config import get_settings
from posenc_wl.graphs.generators import csl
from posenc_wl.harness.registry import encode
from posenc_wl.harness.runner import apply_pool
from posenc_wl.models.schemas import CslRow, CslTable, TestKind
from posenc_wl.processors.refine import ColorHistory, history_verdict, rpe_aug_wl

logger = logging.getLogger(__name__)

CSL_ENCODINGS = (
    "adjacency",
    "spd",
    "resistance",
    "rspe:inv0",
    "power:sym_norm_adjacency,20",
)


def _row(args: Tuple[str, int, Tuple[int, ...]]) -> CslRow:
    encoding, n, skips = args
    histories: Dict[int, ColorHistory] = {}
    for s in skips:
        g = csl(n, s)
        histories[s] = rpe_aug_wl(g, encode(encoding, g))
    missed: List[Tuple[int, int]] = []
    pairs = list(combinations(skips, 2))
    for s, t in pairs:
        if not history_verdict(TestKind.PSI_WL, histories[s], histories[t], encoding).distinguishable:
            missed.append((s, t))
    logger.info(f"CSL {encoding}: {len(pairs) - len(missed)}/{len(pairs)} pairs distinguished")
    return CslRow(
        encoding=encoding,
        distinguished=len(pairs) - len(missed),
        total=len(pairs),
        undistinguished_pairs=missed,
    )


def csl_experiment(
    encodings: Sequence[str] = CSL_ENCODINGS,
    n: Optional[int] = None,
    skips: Optional[Sequence[int]] = None,
    jobs: Optional[int] = None,
) -> CslTable:
    """
    Count the CSL class pairs each encoding separates under psi-WL.

    Each graph is refined once per encoding; pairs are then compared through their
    histogram sequences.
    """
    settings = get_settings()
    n = settings.CSL_N if n is None else n
    skips = tuple(settings.csl_skips_list if skips is None else skips)
    rows = apply_pool(_row, [(e, n, skips) for e in encodings], jobs)
    return CslTable(schema_version=settings.REPORT_SCHEMA_VERSION, n=n, skips=list(skips), rows=rows)
