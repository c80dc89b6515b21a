"""Report rendering: JSON (full), CSV tables and JSON Lines streams.

Output carries no timestamps, so identical runs render byte-identical reports.
"""

import io
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import jsonlines
import pandas as pd
from pydantic import BaseModel

from posenc_wl.core.config import get_settings
from posenc_wl.core.exceptions import PosEncError
from posenc_wl.models.schemas import CslTable, DominanceReport, ReportFormat, TheoremResult, Verdict

logger = logging.getLogger(__name__)

Report = Union[BaseModel, Sequence[BaseModel]]


class ReportWriter:
    """Renders report models in the configured format."""

    def __init__(self):
        self.settings = get_settings()

    def render(self, report: Report, fmt: Optional[Union[ReportFormat, str]] = None) -> str:
        """
        Render a report.

        Args:
            report: A report model or a list of them (e.g. one TheoremResult per theorem)
            fmt: ``json``, ``csv`` or ``jsonl``; defaults to ``REPORT_FORMAT``

        Returns:
            The rendered text, newline terminated
        """
        fmt = ReportFormat(fmt or self.settings.REPORT_FORMAT)
        logger.debug(f"Rendering {type(report).__name__} as {fmt.value}")
        if fmt == ReportFormat.JSON:
            return self._json(report)
        rows = self._rows(report)
        if fmt == ReportFormat.JSONL:
            buf = io.StringIO()
            with jsonlines.Writer(buf, sort_keys=True, compact=True) as writer:
                writer.write_all(rows)
            return buf.getvalue()
        return pd.DataFrame(rows).to_csv(index=False, lineterminator="\n")

    def write(self, report: Report, path: Union[str, Path], fmt: Optional[Union[ReportFormat, str]] = None) -> None:
        text = self.render(report, fmt)
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as e:
            raise PosEncError(f"cannot write report to {path}: {e}", {"path": str(path)}) from e
        logger.info(f"Report written to {path}")

    @staticmethod
    def _json(report: Report) -> str:
        if isinstance(report, BaseModel):
            return report.model_dump_json(indent=2) + "\n"
        return json.dumps([r.model_dump(mode="json") for r in report], indent=2) + "\n"

    def _rows(self, report: Report) -> List[Dict[str, Any]]:
        if isinstance(report, DominanceReport):
            return self._dominance_rows(report)
        if isinstance(report, CslTable):
            return [
                {
                    "encoding": r.encoding,
                    "distinguished": r.distinguished,
                    "total": r.total,
                    "fraction": round(r.fraction, 6),
                }
                for r in report.rows
            ]
        if isinstance(report, TheoremResult):
            return [self._theorem_row(report)]
        if isinstance(report, Verdict):
            return [self._verdict_row(report)]
        if isinstance(report, BaseModel):
            return [report.model_dump(mode="json")]
        rows: List[Dict[str, Any]] = []
        for item in report:
            rows.extend(self._rows(item))
        return rows

    @staticmethod
    def _dominance_rows(report: DominanceReport) -> List[Dict[str, Any]]:
        return [
            {
                "row": c.row,
                "col": c.col,
                "both": c.both,
                "neither": c.neither,
                "only_row": c.only_row,
                "only_col": c.only_col,
                "row_dominates": c.row_dominates,
                "only_row_pairs": ";".join(c.only_row_pairs),
                "only_col_pairs": ";".join(c.only_col_pairs),
            }
            for c in report.cells
        ]

    @staticmethod
    def _theorem_row(result: TheoremResult) -> Dict[str, Any]:
        return {
            "theorem_id": result.theorem_id,
            "status": result.status.value,
            "label": result.label,
            "corpus": result.corpus,
            "seed": result.seed,
            "checked_pairs": result.checked_pairs,
            "not_applicable": len(result.not_applicable_pairs),
            "violations": len(result.violations),
            "failed_pairs": len(result.failed_pairs),
        }

    @staticmethod
    def _verdict_row(verdict: Verdict) -> Dict[str, Any]:
        return {
            "test": verdict.test.value,
            "encoding": verdict.encoding,
            "distinguishable": verdict.distinguishable,
            "separating_round": verdict.separating_round,
            "stable_round_a": verdict.stable_round_a,
            "stable_round_b": verdict.stable_round_b,
        }


report_writer = ReportWriter()
render = report_writer.render
write_report = report_writer.write
