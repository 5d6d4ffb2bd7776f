"""Reader for the line-delimited JSON graph format.

Layout, one JSON object per line:

    {"format_version": 1, "params": {...}, "n": N, "seed": S}
    {"id": 1, "pos": [x0, ..., xd]}                  N vertex lines
    {"src": 1, "slot": 1, "dst": 1}                  N*m edge lines
    {"n": 1, "L": ..., "candidates": ..., ...}       0 or N trace lines
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError

from ..core.base import GraphSource
from ..core.params import GpmParams
from ..core.records import GenerationTrace, GraphRecord, TraceRow
from ..geometry.sphere import unit_area_radius

logger = logging.getLogger("gpm.sources.graph_file")

FORMAT_VERSION = 1
RADIUS_TOLERANCE = 1e-9


class GraphFormatError(ValueError):
    """A graph file that does not follow the format; the message names the line"""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class _Line(BaseModel):
    model_config = ConfigDict(extra="forbid", strict=True)


class HeaderLine(_Line):
    format_version: int
    params: Dict[str, Any]
    n: int
    seed: int


class VertexLine(_Line):
    id: int
    pos: List[float]


class EdgeLine(_Line):
    src: int
    slot: int
    dst: int


class TraceLine(_Line):
    n: int
    L: float
    candidates: int
    denominators: List[float] = []
    L_degree: Optional[int] = None
    denominator_degrees: List[int] = []


def _describe(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "record"
        parts.append(f"{location}: {item['msg']}")
    return "; ".join(parts)


class GraphFileSource(GraphSource):
    """
    Graph file reader

    Required config:
        file_path (str): Path to the graph file
    """

    def _lines(self, path: Path) -> Iterator[Tuple[int, Dict[str, Any]]]:
        with open(path, "r", encoding="utf-8") as handle:
            for number, text in enumerate(handle, start=1):
                if not text.strip():
                    raise GraphFormatError(number, "empty line")
                try:
                    record = json.loads(text)
                except json.JSONDecodeError as e:
                    raise GraphFormatError(number, f"invalid JSON ({e.msg})")
                if not isinstance(record, dict):
                    raise GraphFormatError(number, "expected a JSON object")
                yield number, record

    @staticmethod
    def _parse(model, number: int, record: Dict[str, Any]):
        try:
            return model.model_validate(record)
        except ValidationError as e:
            raise GraphFormatError(number, f"bad {model.__name__[:-4].lower()} record: {_describe(e)}")

    def extract(self) -> Tuple[GraphRecord, Optional[GenerationTrace]]:
        """Read and validate the graph file"""
        file_path = self.get_config("file_path")
        if not file_path:
            raise ValueError("file_path is required for graph file source")
        path = Path(file_path)
        if not path.exists():
            raise FileNotFoundError(f"Graph file not found: {path}")

        lines = self._lines(path)
        try:
            number, record = next(lines)
        except StopIteration:
            raise GraphFormatError(1, "file is empty")

        header = self._parse(HeaderLine, number, record)
        if header.format_version != FORMAT_VERSION:
            raise GraphFormatError(number, f"unsupported format_version {header.format_version}")
        if header.n < 1:
            raise GraphFormatError(number, f"n must be at least 1, got {header.n}")
        try:
            params = GpmParams.from_dict(header.params)
        except (KeyError, TypeError, ValueError) as e:
            raise GraphFormatError(number, f"invalid params: {e}")

        n, m, d = header.n, params.m, params.d
        radius = unit_area_radius(d)
        positions = np.empty((n, d + 1))
        targets = np.empty(n * m, dtype=np.int64)
        rows: List[TraceRow] = []

        expected_vertex = 1
        expected_edge = 0
        for number, record in lines:
            if expected_vertex <= n:
                vertex = self._parse(VertexLine, number, record)
                if vertex.id != expected_vertex:
                    raise GraphFormatError(number, f"expected vertex {expected_vertex}, found {vertex.id}")
                if len(vertex.pos) != d + 1:
                    raise GraphFormatError(number, f"position has {len(vertex.pos)} coordinates, expected {d + 1}")
                norm = float(np.sqrt(np.dot(vertex.pos, vertex.pos)))
                if abs(norm - radius) > RADIUS_TOLERANCE:
                    raise GraphFormatError(number, f"position is off the sphere (|pos| = {norm}, R = {radius})")
                positions[expected_vertex - 1] = vertex.pos
                expected_vertex += 1
            elif expected_edge < n * m:
                edge = self._parse(EdgeLine, number, record)
                source, slot = divmod(expected_edge, m)
                if (edge.src, edge.slot) != (source + 1, slot + 1):
                    raise GraphFormatError(
                        number, f"expected edge slot ({source + 1}, {slot + 1}), found ({edge.src}, {edge.slot})"
                    )
                if not 1 <= edge.dst <= edge.src:
                    raise GraphFormatError(number, f"edge target {edge.dst} must lie in 1..{edge.src}")
                targets[expected_edge] = edge.dst
                expected_edge += 1
            else:
                row = self._parse(TraceLine, number, record)
                if row.n != len(rows) + 1 or row.n > n:
                    raise GraphFormatError(number, f"unexpected trace row for vertex {row.n}")
                rows.append(
                    TraceRow(
                        n=row.n,
                        L=row.L,
                        candidates=row.candidates,
                        denominators=tuple(row.denominators),
                        L_degree=row.L_degree,
                        denominator_degrees=tuple(row.denominator_degrees),
                    )
                )

        if expected_vertex <= n:
            raise GraphFormatError(number + 1, f"missing vertex records: found {expected_vertex - 1} of {n}")
        if expected_edge < n * m:
            raise GraphFormatError(number + 1, f"missing edge records: found {expected_edge} of {n * m}")
        if rows and len(rows) != n:
            raise GraphFormatError(number + 1, f"incomplete trace: found {len(rows)} of {n} rows")

        sources = np.repeat(np.arange(1, n + 1, dtype=np.int64), m)
        slots = np.tile(np.arange(1, m + 1, dtype=np.int64), n)
        degrees = np.zeros(n, dtype=np.int64)
        np.add.at(degrees, sources - 1, 1)
        np.add.at(degrees, targets - 1, 1)
        graph = GraphRecord(
            params=params,
            seed=header.seed,
            positions=positions,
            sources=sources,
            slots=slots,
            targets=targets,
            degrees=degrees,
        )
        logger.debug(f"Read graph n={n} m={m} from {path}")
        return graph, (GenerationTrace(rows) if rows else None)


def read_graph(file_path: str) -> Tuple[GraphRecord, Optional[GenerationTrace]]:
    return GraphFileSource({"file_path": file_path}).extract()
