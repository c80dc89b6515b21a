"""Encoding-vs-encoding dominance grids over a corpus."""

import logging
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from posenc_wl.core.config import get_settings
from posenc_wl.core.exceptions import PosEncError
from posenc_wl.harness.corpus import Corpus, CorpusPair
from posenc_wl.harness.registry import encode_pair, parse_encoding
from posenc_wl.harness.runner import apply_pool
from posenc_wl.models.schemas import DominanceCell, DominanceReport, EngineKind, FailedPair, TestKind, Verdict
from posenc_wl.processors.refine import compare

logger = logging.getLogger(__name__)

# Pseudo-encoding standing for classical WL in grids.
CLASSICAL = "wl"


def pair_verdict(pair: CorpusPair, encoding: str, test: Union[TestKind, str]) -> Verdict:
    """
    Verdict of one test on one corpus pair.

    ``encoding == "wl"`` runs classical WL; absolute encodings always use the raw test.
    """
    test = TestKind(test)
    if encoding == CLASSICAL:
        return compare(pair.a, pair.b, TestKind.CLASSICAL, name=CLASSICAL)
    if parse_encoding(encoding).kind == "ape" and test != TestKind.RAW_APE:
        test = TestKind.RAW_APE
    ea, eb = encode_pair(encoding, pair.a, pair.b)
    return compare(pair.a, pair.b, test, ea, eb, name=encoding)


def _row_task(args: Tuple[CorpusPair, Tuple[str, ...], str]) -> Tuple[str, Dict[str, bool], List[FailedPair]]:
    pair, encodings, engine = args
    verdicts: Dict[str, bool] = {}
    failures: List[FailedPair] = []
    for encoding in encodings:
        try:
            verdicts[encoding] = pair_verdict(pair, encoding, engine).distinguishable
        except PosEncError as e:
            logger.error(f"{pair.pair_id}/{encoding}: {e.message}", extra={"details": e.details})
            failures.append(
                FailedPair(pair_id=pair.pair_id, encoding=encoding, error=type(e).__name__, message=e.message)
            )
    return pair.pair_id, verdicts, failures


def tally(row: str, col: str, verdicts: Dict[str, Dict[str, bool]]) -> DominanceCell:
    """Count the four verdict combinations of ``(row, col)`` over every pair."""
    cell = DominanceCell(row=row, col=col)
    for pair_id, v in verdicts.items():
        r, c = v[row], v[col]
        if r and c:
            cell.both += 1
        elif not r and not c:
            cell.neither += 1
        elif r:
            cell.only_row += 1
            cell.only_row_pairs.append(pair_id)
        else:
            cell.only_col += 1
            cell.only_col_pairs.append(pair_id)
    return cell


def dominance_matrix(
    corpus: Corpus,
    encodings: Sequence[str],
    engine: Union[EngineKind, str] = EngineKind.PSI_WL,
    jobs: Optional[int] = None,
) -> DominanceReport:
    """
    Run every encoding on every corpus pair and tally the ordered encoding pairs.

    Pairs on which some encoding fails are recorded in ``failed_pairs``, left out of every
    cell and the report is flagged. ``row -> col`` is a dominance edge when no pair is
    separated by ``col`` alone; mutual edges are also listed as equivalences.
    """
    engine = EngineKind(engine)
    settings = get_settings()
    encodings = list(dict.fromkeys(encodings))
    for e in encodings:
        if e != CLASSICAL:
            parse_encoding(e)

    results = apply_pool(_row_task, [(p, tuple(encodings), engine.value) for p in corpus.pairs], jobs)

    verdicts: Dict[str, Dict[str, bool]] = {}
    failed: List[FailedPair] = []
    for pair_id, row, failures in results:
        if failures:
            failed.extend(failures)
        else:
            verdicts[pair_id] = row

    cells = [tally(r, c, verdicts) for r, c in permutations(encodings, 2)]
    edges = [(c.row, c.col) for c in cells if c.row_dominates]
    edge_set = set(edges)
    equivalences = [(r, c) for r, c in edges if r < c and (c, r) in edge_set]
    if failed:
        logger.warning(f"{len(failed)} pair computations failed; report flagged")

    return DominanceReport(
        schema_version=settings.REPORT_SCHEMA_VERSION,
        corpus=corpus.name,
        engine=engine,
        seed=corpus.seed,
        quant_step=settings.QUANT_STEP,
        encodings=encodings,
        pair_ids=[p.pair_id for p in corpus.pairs],
        verdicts=verdicts,
        cells=cells,
        dominance_edges=edges,
        equivalences=equivalences,
        failed_pairs=failed,
        flagged=bool(failed),
    )
