"""Pydantic models for reports, corpus records and CLI configuration."""

from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator


class ReportFormat(str, Enum):
    """Supported report formats."""

    JSON = "json"
    JSONL = "jsonl"
    CSV = "csv"


class MatrixKind(str, Enum):
    """Common graph matrices."""

    ADJACENCY = "adjacency"
    SYM_NORM_ADJACENCY = "sym_norm_adjacency"
    RW_NORM_ADJACENCY = "rw_norm_adjacency"
    LAPLACIAN = "laplacian"
    SYM_NORM_LAPLACIAN = "sym_norm_laplacian"
    RW_NORM_LAPLACIAN = "rw_norm_laplacian"


class SpectralForm(str, Enum):
    KERNEL = "kernel"
    DISTANCE = "distance"


class PowerBase(str, Enum):
    LAPLACIAN = "laplacian"
    SYM_NORM_ADJACENCY = "sym_norm_adjacency"
    ADJACENCY = "adjacency"
    HEAT = "heat"


class AugmentKind(str, Enum):
    DIAGONAL = "diagonal"
    COMBINATORIAL = "combinatorial"
    PSEUDOSYMMETRIC = "pseudosymmetric"


class ApeKind(str, Enum):
    DEGREE = "degree"
    RWSE = "rwse"
    HKDIAGSE = "hkdiagse"


class TestKind(str, Enum):
    """Indistinguishability tests accepted by ``compare``."""

    RAW_APE = "raw_ape"
    RAW_RPE = "raw_rpe"
    PSI_WL = "psi_wl"
    PSI_2WL = "psi_2wl"
    CLASSICAL = "classical"


class EngineKind(str, Enum):
    """Refinement engines used for dominance grids."""

    PSI_WL = "psi_wl"
    PSI_2WL = "psi_2wl"


class ApeMode(str, Enum):
    CONCAT = "concat"
    ADD = "add"


class RpeMapKind(str, Enum):
    CHANNEL_LINEAR = "channel_linear"
    GAUSSIAN_MLP = "gaussian_mlp"


class TheoremStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not_applicable"


class CorpusKind(str, Enum):
    STANDARD = "standard"
    RANDOM = "random"
    CSL = "csl"
    DIGRAPH = "digraph"
    FILE = "file"


class Verdict(BaseModel):
    """Outcome of one pairwise indistinguishability test."""

    test: TestKind
    encoding: Optional[str] = None
    distinguishable: bool
    separating_round: Optional[int] = None
    stable_round_a: Optional[int] = None
    stable_round_b: Optional[int] = None
    histograms_a: List[str] = Field(default_factory=list)
    histograms_b: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_separating_round(self) -> "Verdict":
        if self.distinguishable and self.separating_round is None:
            raise ValueError("a distinguishable verdict needs a separating round")
        if not self.distinguishable and self.separating_round is not None:
            raise ValueError("an indistinguishable verdict has no separating round")
        return self


class FailedPair(BaseModel):
    """A pair whose computation raised; recorded and skipped."""

    pair_id: str
    encoding: Optional[str] = None
    error: str
    message: str


class DominanceCell(BaseModel):
    """Verdict tallies for one ordered encoding pair ``(row, col)``."""

    row: str
    col: str
    both: int = 0
    neither: int = 0
    only_row: int = 0
    only_col: int = 0
    only_row_pairs: List[str] = Field(default_factory=list)
    only_col_pairs: List[str] = Field(default_factory=list)

    @property
    def total(self) -> int:
        return self.both + self.neither + self.only_row + self.only_col

    @property
    def row_dominates(self) -> bool:
        """``row`` separated every pair that ``col`` separated."""
        return self.only_col == 0


class DominanceReport(BaseModel):
    """Pairwise verdict grid over a corpus with derived dominance edges."""

    schema_version: str
    corpus: str
    engine: EngineKind
    seed: int
    quant_step: float
    encodings: List[str]
    pair_ids: List[str]
    verdicts: Dict[str, Dict[str, bool]] = Field(default_factory=dict)
    cells: List[DominanceCell] = Field(default_factory=list)
    dominance_edges: List[Tuple[str, str]] = Field(default_factory=list)
    equivalences: List[Tuple[str, str]] = Field(default_factory=list)
    failed_pairs: List[FailedPair] = Field(default_factory=list)
    flagged: bool = False

    def cell(self, row: str, col: str) -> DominanceCell:
        for c in self.cells:
            if c.row == row and c.col == col:
                return c
        raise KeyError((row, col))


class Violation(BaseModel):
    """A pair on which a predicted implication failed, with reproduction parameters."""

    pair_id: str
    reason: str
    details: Dict[str, Any] = Field(default_factory=dict)
    reproduction: Dict[str, Any] = Field(default_factory=dict)


class TheoremResult(BaseModel):
    """Outcome of one verifier on one corpus."""

    schema_version: str
    theorem_id: str
    description: str
    corpus: str
    seed: int
    status: TheoremStatus
    label: str
    checked_pairs: int = 0
    not_applicable_pairs: List[str] = Field(default_factory=list)
    violations: List[Violation] = Field(default_factory=list)
    failed_pairs: List[FailedPair] = Field(default_factory=list)
    tolerances: Dict[str, float] = Field(default_factory=dict)
    metrics: Dict[str, Any] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_fail_has_violation(self) -> "TheoremResult":
        if self.status == TheoremStatus.FAIL and not (self.violations or self.failed_pairs):
            raise ValueError("a failing result must record at least one violating pair")
        return self

    @property
    def passed(self) -> bool:
        return self.status == TheoremStatus.PASS


class CslRow(BaseModel):
    encoding: str
    distinguished: int
    total: int
    undistinguished_pairs: List[Tuple[int, int]] = Field(default_factory=list)

    @property
    def fraction(self) -> float:
        return self.distinguished / self.total if self.total else 0.0


class CslTable(BaseModel):
    """Per-encoding count of CSL class pairs separated by psi-WL."""

    schema_version: str
    n: int
    skips: List[int]
    rows: List[CslRow]

    def row(self, encoding: str) -> CslRow:
        for r in self.rows:
            if r.encoding == encoding:
                return r
        raise KeyError(encoding)


class EncodingSpec(BaseModel):
    """Parsed encoding spec ``[aug+]*base[:params]``."""

    text: str
    kind: str  # 'rpe' or 'ape'
    base: str
    params: List[str] = Field(default_factory=list)
    augmentations: List[AugmentKind] = Field(default_factory=list)


class GraphRecord(BaseModel):
    """JSON form of a (featured) graph."""

    n: int = Field(ge=0)
    directed: bool = False
    edges: List[Tuple[int, int]] = Field(default_factory=list)
    features: Optional[List[List[float]]] = None


class CorpusPairRecord(BaseModel):
    """One labelled pair of a corpus file."""

    pair_id: str
    label: str = ""
    provenance: str = ""
    a: GraphRecord
    b: GraphRecord


class ErrorResponse(BaseModel):
    """Error body written to stderr by the CLI."""

    error: str
    message: str
    details: Optional[Dict[str, Any]] = None


class CliConfig(BaseModel):
    """Validated options of one CLI invocation."""

    command: str
    input: Optional[str] = None
    output: Optional[str] = None
    encoding: Optional[str] = None
    engine: Optional[EngineKind] = None
    test: Optional[TestKind] = None
    corpus: Optional[str] = None
    theorem: Optional[str] = None
    quant_step: Optional[float] = Field(default=None, gt=0)
    seed: int = 0
    jobs: int = Field(default=0, ge=0)
    report_format: ReportFormat = ReportFormat.JSON
    options: Dict[str, Any] = Field(default_factory=dict)
