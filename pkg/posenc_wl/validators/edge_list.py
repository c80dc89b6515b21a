"""Edge-list text format: parsing with line-numbered errors, and formatting.

Format (whitespace-delimited, 0-indexed, UTF-8)::

    n m d directed_flag
    u v                      (m lines)
    x_1 ... x_d              (n lines, only when d > 0)

Blank lines and lines starting with ``#`` are ignored.
"""

import math
from pathlib import Path
from typing import List, Optional, Tuple, Union

from posenc_wl.core.exceptions import EdgeListParseError, GraphValidationError
from posenc_wl.graphs.core import featured, from_edge_list
from posenc_wl.models.graph import FeaturedGraph, Graph


class EdgeListValidator:
    """Parses and validates edge-list documents."""

    def parse(self, text: str) -> FeaturedGraph:
        """
        Parse an edge-list document.

        Args:
            text: Document content

        Returns:
            FeaturedGraph (``d = 0`` when the header declares no features)

        Raises:
            EdgeListParseError: with the 1-based line number of the first problem
        """
        lines = self._content_lines(text)
        if not lines:
            raise EdgeListParseError("missing header 'n m d directed_flag'", line=1)

        header_no, header = lines[0]
        n, m, d, directed = self._parse_header(header, header_no)

        expected = 1 + m + (n if d > 0 else 0)
        if len(lines) < expected:
            last = lines[-1][0]
            raise EdgeListParseError(
                f"expected {expected - 1} body lines, found {len(lines) - 1}", line=last + 1
            )
        if len(lines) > expected:
            raise EdgeListParseError("unexpected trailing content", line=lines[expected][0])

        pairs = []
        for line_no, fields in lines[1 : 1 + m]:
            if len(fields) != 2:
                raise EdgeListParseError("an edge line needs exactly two indices", line=line_no)
            pairs.append(
                (self._int(fields[0], line_no), self._int(fields[1], line_no))
            )

        rows: List[List[float]] = []
        for line_no, fields in lines[1 + m :]:
            if len(fields) != d:
                raise EdgeListParseError(
                    f"a feature line needs exactly {d} values", line=line_no
                )
            rows.append([self._float(x, line_no) for x in fields])

        try:
            graph = from_edge_list(n, directed, pairs)
        except GraphValidationError as e:
            bad = e.details.get("edge")
            line_no = next(
                (ln for ln, f in lines[1 : 1 + m] if bad and [int(f[0]), int(f[1])] == bad),
                header_no,
            )
            raise EdgeListParseError(e.message, line=line_no) from e

        return featured(graph, rows if d > 0 else None)

    def validate(self, text: str) -> Tuple[bool, Optional[str]]:
        """
        Validate a document without raising.

        Returns:
            Tuple of (is_valid, error_message)
        """
        try:
            self.parse(text)
            return True, None
        except EdgeListParseError as e:
            return False, e.message

    def format(self, g: Union[Graph, FeaturedGraph]) -> str:
        """Serialize a graph; undirected edges are written once with ``u < v``."""
        fg = g if isinstance(g, FeaturedGraph) else featured(g)
        graph = fg.graph
        edges = list(graph.edges) if graph.directed else graph.unordered_edges()
        out = [f"{graph.n} {len(edges)} {fg.d} {1 if graph.directed else 0}"]
        out.extend(f"{u} {v}" for u, v in edges)
        if fg.d:
            for row in fg.features:
                out.append(" ".join(format(float(x), ".17g") for x in row))
        return "\n".join(out) + "\n"

    def read(self, path: Union[str, Path]) -> FeaturedGraph:
        return self.parse(Path(path).read_text(encoding="utf-8"))

    def write(self, g: Union[Graph, FeaturedGraph], path: Union[str, Path]) -> None:
        Path(path).write_text(self.format(g), encoding="utf-8")

    @staticmethod
    def _content_lines(text: str) -> List[Tuple[int, List[str]]]:
        out = []
        for i, raw in enumerate(text.splitlines(), start=1):
            stripped = raw.strip()
            if not stripped or stripped.startswith("#"):
                continue
            out.append((i, stripped.split()))
        return out

    def _parse_header(self, fields: List[str], line_no: int) -> Tuple[int, int, int, bool]:
        if len(fields) != 4:
            raise EdgeListParseError("header must be 'n m d directed_flag'", line=line_no)
        n, m, d, flag = (self._int(x, line_no) for x in fields)
        if n < 0 or m < 0 or d < 0:
            raise EdgeListParseError("header counts must be nonnegative", line=line_no)
        if flag not in (0, 1):
            raise EdgeListParseError("directed_flag must be 0 or 1", line=line_no)
        return n, m, d, bool(flag)

    @staticmethod
    def _int(token: str, line_no: int) -> int:
        try:
            return int(token)
        except ValueError:
            raise EdgeListParseError(f"not an integer: {token!r}", line=line_no) from None

    @staticmethod
    def _float(token: str, line_no: int) -> float:
        try:
            value = float(token)
        except ValueError:
            raise EdgeListParseError(f"not a number: {token!r}", line=line_no) from None
        if not math.isfinite(value):
            raise EdgeListParseError(f"feature value must be finite: {token!r}", line=line_no)
        return value


edge_list_validator = EdgeListValidator()


def read_edge_list(text: str) -> FeaturedGraph:
    return edge_list_validator.parse(text)


def write_edge_list(g: Union[Graph, FeaturedGraph]) -> str:
    return edge_list_validator.format(g)
