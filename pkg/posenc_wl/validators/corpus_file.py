"""JSON-Lines corpus files: one labelled graph pair per line."""

import logging
from pathlib import Path
from typing import List, Optional, Tuple, Union

import jsonlines
from pydantic import ValidationError

from posenc_wl.core.exceptions import CorpusError, GraphValidationError
from posenc_wl.graphs.core import featured, from_edge_list
from posenc_wl.models.graph import FeaturedGraph
from posenc_wl.models.schemas import CorpusPairRecord, GraphRecord

logger = logging.getLogger(__name__)


class CorpusFileValidator:
    """Reads and writes corpus files, reporting problems with 1-based line numbers."""

    def read(self, path: Union[str, Path]) -> List[CorpusPairRecord]:
        """
        Read every record of a corpus file.

        Raises:
            CorpusError: with ``details["line"]`` set for malformed lines
        """
        path = Path(path)
        if not path.exists():
            raise CorpusError(f"corpus file not found: {path}")
        records = []
        with jsonlines.open(path, mode="r") as reader:
            line = 0
            try:
                for line, obj in enumerate(reader.iter(skip_empty=True), start=1):
                    records.append(CorpusPairRecord.model_validate(obj))
            except jsonlines.InvalidLineError as e:
                raise CorpusError(f"line {e.lineno}: invalid JSON", {"line": e.lineno}) from e
            except ValidationError as e:
                raise CorpusError(
                    f"line {line}: invalid pair record", {"line": line, "errors": e.errors(include_url=False)}
                ) from e
        logger.info(f"Read {len(records)} pairs from {path}")
        return records

    def validate(self, path: Union[str, Path]) -> Tuple[bool, Optional[str]]:
        try:
            for record in self.read(path):
                self.to_pair(record)
            return True, None
        except (CorpusError, GraphValidationError) as e:
            return False, e.message

    def write(self, records: List[CorpusPairRecord], path: Union[str, Path]) -> None:
        with jsonlines.open(Path(path), mode="w", sort_keys=True) as writer:
            for record in records:
                writer.write(record.model_dump(mode="json"))

    @staticmethod
    def to_graph(record: GraphRecord) -> FeaturedGraph:
        graph = from_edge_list(record.n, record.directed, record.edges)
        return featured(graph, record.features)

    def to_pair(self, record: CorpusPairRecord) -> Tuple[FeaturedGraph, FeaturedGraph]:
        try:
            return self.to_graph(record.a), self.to_graph(record.b)
        except GraphValidationError as e:
            raise CorpusError(f"pair {record.pair_id}: {e.message}", {"pair_id": record.pair_id, **e.details}) from e

    @staticmethod
    def to_record(g: FeaturedGraph) -> GraphRecord:
        graph = g.graph
        edges = list(graph.edges) if graph.directed else graph.unordered_edges()
        return GraphRecord(
            n=graph.n,
            directed=graph.directed,
            edges=edges,
            features=g.features.tolist() if g.is_featured else None,
        )


corpus_file_validator = CorpusFileValidator()
