"""Named verifiers: each checks one predicted implication or identity on a corpus.

A pass on a finite corpus corroborates a result without proving it, so passing reports
are labelled "consistent with <id>". Pairs outside a result's hypotheses are listed as
not applicable; a corpus with no applicable pair yields ``not_applicable``.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from posenc_wl.core.config import get_settings
from posenc_wl.core.exceptions import PosEncError, VerificationError
from posenc_wl.graphs.core import as_featured, is_connected
from posenc_wl.graphs.cut_edges import block_cut_edge_tree, bridges, tree_isomorphic
from posenc_wl.graphs.generators import featured_c4_pair
from posenc_wl.harness.corpus import Corpus, CorpusPair
from posenc_wl.harness.dominance import CLASSICAL, pair_verdict
from posenc_wl.harness.registry import encode, encode_pair
from posenc_wl.harness.runner import apply_pool
from posenc_wl.harness.search import find_rd_not_combinatorial
from posenc_wl.models.schemas import FailedPair, TestKind, TheoremResult, TheoremStatus, Violation
from posenc_wl.processors.encodings import rpe_encoder, rpe_resistance
from posenc_wl.processors.refine import is_combinatorially_aware, partition_signature
from posenc_wl.processors.tokens import pair_bytes, tokenize
from posenc_wl.processors.transformer import (
    RpeAttentionMaps,
    TransformerConfig,
    forward_ape_gt,
    forward_rpe_gt,
    outputs_match,
    sorted_rows,
)

logger = logging.getLogger(__name__)

PSI_WL = TestKind.PSI_WL
PSI_2WL = TestKind.PSI_2WL
RAW_APE = TestKind.RAW_APE

BRIDGE_TOL = 1e-9
DIAG_TOL = 1e-8
GT_TOL = 1e-6
GT_CONVERSE_GAP = 1e-4
GT_SEEDS = range(10)

Criterion = Tuple[str, TestKind]


@dataclass
class PairOutcome:
    """What one verifier observed on one pair."""

    pair_id: str
    applicable: bool = True
    violations: List[Violation] = field(default_factory=list)
    failed: List[FailedPair] = field(default_factory=list)
    metrics: Dict[str, Any] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    reproduction: Dict[str, Any] = field(default_factory=dict)

    def violation(self, reason: str, **details: Any) -> None:
        self.violations.append(Violation(pair_id=self.pair_id, reason=reason, details=details))

    def metric_max(self, name: str, value: float) -> None:
        self.metrics[name] = max(float(value), self.metrics.get(name, float("-inf")))


def _not_applicable(pair: CorpusPair) -> PairOutcome:
    return PairOutcome(pair.pair_id, applicable=False)


def _distinguishes(pair: CorpusPair, criterion: Criterion) -> bool:
    encoding, test = criterion
    return pair_verdict(pair, encoding, test).distinguishable


def _dominates(out: PairOutcome, pair: CorpusPair, strong: Criterion, weak: Criterion) -> None:
    """Record a violation when ``weak`` separates the pair and ``strong`` does not."""
    if _distinguishes(pair, weak) and not _distinguishes(pair, strong):
        out.violation(
            f"{weak[0]} ({weak[1].value}) separates the pair but {strong[0]} ({strong[1].value}) does not",
            strong=list(strong),
            weak=list(weak),
        )


def _agree(out: PairOutcome, pair: CorpusPair, left: Criterion, right: Criterion) -> None:
    a, b = _distinguishes(pair, left), _distinguishes(pair, right)
    if a != b:
        out.violation(
            f"verdicts differ: {left[0]} ({left[1].value})={a}, {right[0]} ({right[1].value})={b}",
            left=list(left),
            right=list(right),
        )


def _undirected(pair: CorpusPair) -> bool:
    return not pair.directed


def _small(pair: CorpusPair) -> bool:
    return _undirected(pair) and pair.max_n <= get_settings().POWER_STACK_MAX_N


def _two_wl_sized(pair: CorpusPair) -> bool:
    return _undirected(pair) and pair.max_n <= get_settings().TWO_WL_MAX_N


def _connected(pair: CorpusPair) -> bool:
    return _undirected(pair) and is_connected(pair.a.graph) and is_connected(pair.b.graph)


def _functions() -> List[str]:
    return get_settings().spectral_functions_list


# -- per-pair checks ---------------------------------------------------------------


def check_wl_equals_2wl(pair: CorpusPair) -> PairOutcome:
    if not _small(pair):
        return _not_applicable(pair)
    out = PairOutcome(pair.pair_id)
    for encoding in ("adjacency", "spd", "resistance", "heat:1"):
        _agree(out, pair, (encoding, PSI_WL), (encoding, PSI_2WL))
    return out


def check_ape_to_rpe(pair: CorpusPair) -> PairOutcome:
    if not _two_wl_sized(pair):
        return _not_applicable(pair)
    out = PairOutcome(pair.pair_id)
    for phi in ("degree", "rwse:1-4", "hkdiagse:1,2"):
        _agree(out, pair, (phi, RAW_APE), (f"pair:{phi}", PSI_WL))
        _agree(out, pair, (phi, RAW_APE), (f"pair:{phi}", PSI_2WL))
    return out


def check_rpe_to_ape(pair: CorpusPair) -> PairOutcome:
    if not _two_wl_sized(pair) or pair.is_featured:
        return _not_applicable(pair)
    out = PairOutcome(pair.pair_id)
    for psi in ("resistance", "spd", "diag+adjacency"):
        _agree(out, pair, (psi, PSI_2WL), (f"canonical:{psi}", RAW_APE))
    return out


def check_distance_vs_kernel(pair: CorpusPair) -> PairOutcome:
    if not _undirected(pair):
        return _not_applicable(pair)
    out = PairOutcome(pair.pair_id)
    for f in _functions():
        _dominates(out, pair, (f"distance:{f}", PSI_WL), (f"kernel:{f}", PSI_WL))
        _dominates(out, pair, (f"diag+kernel:{f}", PSI_WL), (f"distance:{f}", PSI_WL))
    return out


def check_resistance_vs_pinv(pair: CorpusPair) -> PairOutcome:
    if not _undirected(pair):
        return _not_applicable(pair)
    out = PairOutcome(pair.pair_id)
    _agree(out, pair, ("resistance", PSI_WL), ("pinv", PSI_WL))
    return out


def check_rspe_canonical(pair: CorpusPair) -> PairOutcome:
    if not _two_wl_sized(pair) or pair.is_featured:
        return _not_applicable(pair)
    out = PairOutcome(pair.pair_id)
    _dominates(out, pair, ("canonical:rspe:inv0", RAW_APE), ("resistance", PSI_WL))
    return out


def _power_check(stack: str, kernel: str) -> Callable[[CorpusPair], PairOutcome]:
    def check(pair: CorpusPair) -> PairOutcome:
        if not _small(pair):
            return _not_applicable(pair)
        out = PairOutcome(pair.pair_id)
        for f in _functions():
            _dominates(out, pair, (stack, PSI_WL), (f"{kernel}:{f}", PSI_WL))
        return out

    return check


check_laplacian_powers = _power_check("power:laplacian", "kernel")
check_normalized_adjacency_powers = _power_check("power:sym_norm_adjacency", "nkernel")
check_heat_powers = _power_check("power:heat,2n-1,literal", "kernel")


def check_common_matrices(pair: CorpusPair) -> PairOutcome:
    if not _undirected(pair):
        return _not_applicable(pair)
    out = PairOutcome(pair.pair_id)
    for m in (
        "adjacency",
        "sym_norm_adjacency",
        "rw_norm_adjacency",
        "laplacian",
        "sym_norm_laplacian",
        "rw_norm_laplacian",
    ):
        _agree(out, pair, (m, PSI_WL), (CLASSICAL, TestKind.CLASSICAL))
    return out


def check_directed_stack(pair: CorpusPair) -> PairOutcome:
    if not pair.directed:
        return _not_applicable(pair)
    out = PairOutcome(pair.pair_id)
    for alpha in ("0.25", "0.3333333333"):
        _dominates(out, pair, ("directed_stack", PSI_WL), (f"magnetic:{alpha}", PSI_WL))
    return out


def check_combinatorial_beats_wl(pair: CorpusPair) -> PairOutcome:
    if not _undirected(pair):
        return _not_applicable(pair)
    ea, eb = encode_pair("spd", pair.a, pair.b)
    if not is_combinatorially_aware([(pair.a.graph, ea), (pair.b.graph, eb)]):
        return _not_applicable(pair)
    out = PairOutcome(pair.pair_id)
    _dominates(out, pair, ("spd", PSI_WL), (CLASSICAL, TestKind.CLASSICAL))
    return out


def _token_partition(pair: CorpusPair, encoding: str) -> Tuple[int, ...]:
    ea, eb = encode_pair(encoding, pair.a, pair.b)
    flat = [t for psi in (ea, eb) for row in pair_bytes(tokenize(psi)) for t in row]
    return partition_signature(flat)


def check_combinatorial_awareness(pair: CorpusPair) -> PairOutcome:
    if not _undirected(pair):
        return _not_applicable(pair)
    out = PairOutcome(pair.pair_id)
    for encoding in ("spd", "adjacency", "resistance"):
        ea, eb = encode_pair(encoding, pair.a, pair.b)
        aware = is_combinatorially_aware([(pair.a.graph, ea), (pair.b.graph, eb)])
        unchanged = _token_partition(pair, encoding) == _token_partition(pair, f"comb+{encoding}")
        if aware != unchanged:
            out.violation(
                f"{encoding}: combinatorially-aware={aware} but augmentation unchanged={unchanged}",
                encoding=encoding,
            )
    return out


def _check_bridges(out: PairOutcome, side: str, g) -> None:
    rd = rpe_resistance(g).values[:, :, 0]
    cut = bridges(g)
    for u, v in g.unordered_edges():
        value = float(rd[u, v])
        is_one = abs(value - 1.0) <= BRIDGE_TOL
        if (u, v) in cut:
            out.metric_max("max_bridge_rd_error", abs(value - 1.0))
        if is_one != ((u, v) in cut) or value > 1.0 + BRIDGE_TOL:
            out.violation(
                f"graph {side}: edge ({u}, {v}) has RD {value!r}, bridge={(u, v) in cut}",
                graph=side,
                edge=[u, v],
                rd=value,
            )


def check_cut_edges(pair: CorpusPair) -> PairOutcome:
    if not _connected(pair):
        return _not_applicable(pair)
    out = PairOutcome(pair.pair_id)
    _check_bridges(out, "a", pair.a.graph)
    _check_bridges(out, "b", pair.b.graph)
    if not _distinguishes(pair, ("resistance", PSI_WL)):
        ta, tb = block_cut_edge_tree(pair.a.graph), block_cut_edge_tree(pair.b.graph)
        if not tree_isomorphic(ta, tb):
            out.violation("RD-WL cannot separate the pair but the block cut-edge trees differ")
    return out


def check_diagonal_identity(pair: CorpusPair) -> PairOutcome:
    """``L+(k, k) = mean_j RD(k, j) - sum(RD) / (2 n^2)`` on both graphs."""
    if not _connected(pair):
        return _not_applicable(pair)
    out = PairOutcome(pair.pair_id)
    for side, fg in (("a", pair.a), ("b", pair.b)):
        g = fg.graph
        rd = rpe_resistance(g).values[:, :, 0]
        reconstructed = rd.mean(axis=1) - rd.sum() / (2.0 * g.n**2)
        error = float(np.max(np.abs(np.diag(rpe_encoder.laplacian_pinv(g)) - reconstructed)))
        out.metric_max("max_abs_error", error)
        if error >= DIAG_TOL:
            out.violation(f"graph {side}: diagonal reconstruction error {error:.3e}", graph=side, error=error)
    return out


def _control_criteria(pair: CorpusPair) -> List[Criterion]:
    criteria: List[Criterion] = [(CLASSICAL, TestKind.CLASSICAL), ("adjacency", PSI_WL), ("adjacency", TestKind.RAW_RPE)]
    if pair.directed:
        return criteria + [("directed_stack", PSI_WL), ("magnetic:0.25", PSI_WL)]
    return criteria + [
        ("spd", PSI_WL),
        ("resistance", PSI_WL),
        ("adjacency", PSI_2WL),
        ("degree", RAW_APE),
    ]


def check_controls(pair: CorpusPair) -> PairOutcome:
    if not pair.is_control:
        return _not_applicable(pair)
    out = PairOutcome(pair.pair_id)
    for criterion in _control_criteria(pair):
        if _distinguishes(pair, criterion):
            out.violation(f"feature-isomorphic pair separated by {criterion[0]} ({criterion[1].value})", criterion=list(criterion))
    return out


def _gt_width(pair: CorpusPair) -> Optional[int]:
    wa, wb = pair.a.effective_features().shape[1], pair.b.effective_features().shape[1]
    return wa if wa == wb else None


def _gap(x: np.ndarray, y: np.ndarray) -> float:
    if x.shape != y.shape:
        return float("inf")
    if x.size == 0:
        return 0.0
    return float(np.max(np.abs(sorted_rows(x) - sorted_rows(y))))


def check_transformer_agreement(pair: CorpusPair) -> PairOutcome:
    width = _gt_width(pair)
    if not _undirected(pair) or width is None:
        return _not_applicable(pair)
    out = PairOutcome(pair.pair_id)

    for encoding in ("diag+adjacency", "spd"):
        same = not _distinguishes(pair, (encoding, PSI_WL))
        psi_a, psi_b = encode_pair(encoding, pair.a, pair.b)
        gaps = []
        for seed in GT_SEEDS:
            cfg = TransformerConfig(d=width, seed=seed)
            maps = RpeAttentionMaps.random(cfg, psi_a.k)
            ya = forward_rpe_gt(pair.a, psi_a, maps, cfg)
            yb = forward_rpe_gt(pair.b, psi_b, maps, cfg)
            gaps.append(_gap(ya, yb))
            if same and not outputs_match(ya, yb, GT_TOL):
                out.violation(
                    f"{encoding}-WL cannot separate the pair but RPE transformer outputs differ",
                    encoding=encoding,
                    seed=seed,
                    gap=gaps[-1],
                )
        if same:
            out.metric_max("max_indistinguishable_gap", max(gaps))
        elif max(gaps) <= GT_CONVERSE_GAP:
            out.notes.append(f"{pair.pair_id}: {encoding}-WL separates the pair but no seed moved outputs by more than {GT_CONVERSE_GAP:g}")

    same = not _distinguishes(pair, ("degree", RAW_APE))
    phi_a, phi_b = encode_pair("degree", pair.a, pair.b)
    for seed in GT_SEEDS:
        cfg = TransformerConfig(d=width + phi_a.l, seed=seed)
        ya, yb = forward_ape_gt(pair.a, phi_a, cfg), forward_ape_gt(pair.b, phi_b, cfg)
        if same and not outputs_match(ya, yb, GT_TOL):
            out.violation("equal degree multisets but APE transformer outputs differ", seed=seed, gap=_gap(ya, yb))
    return out


# -- corpus-independent witnesses --------------------------------------------------


def witness_featured_c4() -> PairOutcome:
    """psi-2-WL separates the featured C4 pair; its canonical APE with features does not."""
    a, b = featured_c4_pair()
    pair = CorpusPair("featured_c4_witness", as_featured(a), as_featured(b), "featured", "C4 with features [1,2,3,4] vs [1,3,2,4]")
    out = PairOutcome(pair.pair_id, reproduction=pair.reproduction())
    if not _distinguishes(pair, ("adjacency", PSI_2WL)):
        out.violation("psi-2-WL with adjacency does not separate the featured C4 pair")
    if _distinguishes(pair, ("canonical:adjacency", RAW_APE)):
        out.violation("the canonical APE separates the featured C4 pair")
    return out


def witness_rd_collision() -> PairOutcome:
    """An edge and a non-edge of one small graph share a resistance distance."""
    out = PairOutcome("rd_collision_search", reproduction={"search": "connected atlas graphs, ascending order"})
    hit = find_rd_not_combinatorial()
    if hit is None:
        out.violation("no graph with an edge and a non-edge of equal resistance distance was found")
        return out
    if is_combinatorially_aware([(hit.graph, encode("resistance", hit.graph))]):
        out.violation("the RD collision graph is reported combinatorially-aware", edges=hit.graph.unordered_edges())
    out.metrics["rd_collision"] = {
        "n": hit.graph.n,
        "edges": [list(e) for e in hit.graph.unordered_edges()],
        "edge": list(hit.edge),
        "non_edge": list(hit.non_edge),
        "value": hit.value,
    }
    return out


# -- registry ----------------------------------------------------------------------


@dataclass(frozen=True)
class Verifier:
    theorem_id: str
    description: str
    check: Optional[Callable[[CorpusPair], PairOutcome]] = None
    witness: Optional[Callable[[], PairOutcome]] = None


VERIFIERS: Dict[str, Verifier] = {
    v.theorem_id: v
    for v in (
        Verifier("T3.5", "psi-WL and psi-2-WL agree for adjacency, SPD, RD and heat(1)", check_wl_equals_2wl),
        Verifier("T4.2", "raw APE verdicts equal psi-WL and psi-2-WL verdicts of the lifted pair RPE", check_ape_to_rpe),
        Verifier("T4.4", "psi-2-WL verdicts equal canonical APE verdicts on unfeatured pairs", check_rpe_to_ape),
        Verifier("T5.3", "spectral distance dominates its kernel; diagonal kernel dominates the distance", check_distance_vs_kernel),
        Verifier("C5.4", "RD-WL and pseudoinverse-WL are equally strong", check_resistance_vs_pinv),
        Verifier("T5.6", "the canonical APE of RSPE dominates RD-WL on unfeatured pairs", check_rspe_canonical),
        Verifier("T5.7", "the Laplacian power stack dominates every spectral kernel", check_laplacian_powers),
        Verifier("T5.8", "the normalized adjacency power stack dominates every normalized kernel", check_normalized_adjacency_powers),
        Verifier("T5.9", "the heat kernel power stack dominates every spectral kernel", check_heat_powers),
        Verifier("P5.10", "common graph matrices induce classical WL", check_common_matrices),
        Verifier("P5.11", "the directed stack dominates the magnetic Laplacian", check_directed_stack),
        Verifier("T5.13", "a combinatorially-aware SPD-WL dominates classical WL", check_combinatorial_beats_wl),
        Verifier(
            "P5.15",
            "combinatorial awareness holds iff combinatorial augmentation keeps token classes; RD is not aware",
            check_combinatorial_awareness,
            witness_rd_collision,
        ),
        Verifier("B-CUT", "RD is 1 exactly on bridges; RD-WL-equivalent graphs have isomorphic cut-edge trees", check_cut_edges),
        Verifier("B-DIAG", "pseudoinverse diagonal is recovered from RD row and grand sums", check_diagonal_identity),
        Verifier("EX4.5", "psi-2-WL separates the featured C4 pair while its canonical APE does not", None, witness_featured_c4),
        Verifier("F3.4", "feature-isomorphic control pairs are indistinguishable under every test", check_controls),
        Verifier("L3.6", "transformer outputs agree on WL-indistinguishable pairs", check_transformer_agreement),
    )
}


def get_verifier(theorem_id: str) -> Verifier:
    key = theorem_id.strip().upper()
    if key not in VERIFIERS:
        raise VerificationError(f"unknown theorem id: {theorem_id}", {"known": list(VERIFIERS)})
    return VERIFIERS[key]


def _check_task(args: Tuple[str, CorpusPair]) -> PairOutcome:
    theorem_id, pair = args
    try:
        out = VERIFIERS[theorem_id].check(pair)
    except PosEncError as e:
        logger.error(f"{theorem_id} on {pair.pair_id}: {e.message}", extra={"details": e.details})
        out = PairOutcome(pair.pair_id)
        out.failed.append(FailedPair(pair_id=pair.pair_id, error=type(e).__name__, message=e.message))
    out.reproduction = pair.reproduction()
    return out


def _merge_metric(metrics: Dict[str, Any], name: str, value: Any) -> None:
    current = metrics.get(name)
    if isinstance(value, (int, float)) and isinstance(current, (int, float)):
        metrics[name] = max(current, value)
    elif current is None:
        metrics[name] = value


def verify(theorem_id: str, corpus: Corpus, jobs: Optional[int] = None) -> TheoremResult:
    """
    Run one verifier over a corpus.

    Returns:
        TheoremResult: ``fail`` when some eligible pair violates the prediction or could not
        be computed, ``not_applicable`` when no pair meets the hypotheses, else ``pass``

    Raises:
        VerificationError: for an unknown theorem id
    """
    verifier = get_verifier(theorem_id)
    settings = get_settings()
    outcomes: List[PairOutcome] = []
    if verifier.check is not None:
        outcomes = apply_pool(_check_task, [(verifier.theorem_id, p) for p in corpus.pairs], jobs)
    if verifier.witness is not None:
        outcomes.append(verifier.witness())

    violations: List[Violation] = []
    failed: List[FailedPair] = []
    metrics: Dict[str, Any] = {}
    notes: List[str] = []
    not_applicable: List[str] = []
    checked = 0
    for out in outcomes:
        if not out.applicable:
            not_applicable.append(out.pair_id)
            continue
        checked += 1
        for v in out.violations:
            v.reproduction = {"corpus": corpus.name, "seed": corpus.seed, "theorem": verifier.theorem_id, **out.reproduction}
        violations.extend(out.violations)
        failed.extend(out.failed)
        notes.extend(out.notes)
        for name, value in out.metrics.items():
            _merge_metric(metrics, name, value)

    if violations or failed:
        status, label = TheoremStatus.FAIL, f"contradicts {verifier.theorem_id}"
    elif checked == 0:
        status, label = TheoremStatus.NOT_APPLICABLE, "not applicable"
    else:
        status, label = TheoremStatus.PASS, f"consistent with {verifier.theorem_id}"
    logger.info(
        f"{verifier.theorem_id}: {status.value} on {checked} pairs "
        f"({len(violations)} violations, {len(not_applicable)} not applicable)"
    )
    return TheoremResult(
        schema_version=settings.REPORT_SCHEMA_VERSION,
        theorem_id=verifier.theorem_id,
        description=verifier.description,
        corpus=corpus.name,
        seed=corpus.seed,
        status=status,
        label=label,
        checked_pairs=checked,
        not_applicable_pairs=not_applicable,
        violations=violations,
        failed_pairs=failed,
        tolerances={
            "quant_step": settings.QUANT_STEP,
            "zero_tol": settings.ZERO_TOL,
            "bridge_tol": BRIDGE_TOL,
            "diagonal_tol": DIAG_TOL,
            "transformer_tol": GT_TOL,
        },
        metrics=metrics,
        notes=notes,
    )


def verify_all(corpus: Corpus, theorem_ids: Optional[Sequence[str]] = None, jobs: Optional[int] = None) -> List[TheoremResult]:
    return [verify(t, corpus, jobs) for t in (theorem_ids or list(VERIFIERS))]
