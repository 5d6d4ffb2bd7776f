"""Writer for the line-delimited JSON graph format"""

import json
from pathlib import Path
from typing import Any, Dict, Iterator, Optional

from ..core.base import GraphEndpoint
from ..core.records import GenerationTrace, GraphRecord
from ..sources.graph_file import FORMAT_VERSION


def _dumps(record: Dict[str, Any]) -> str:
    return json.dumps(record, separators=(",", ":"), allow_nan=False)


def graph_lines(graph: GraphRecord, trace: Optional[GenerationTrace] = None) -> Iterator[str]:
    """The file content, one line at a time (without newlines)"""
    yield _dumps(
        {
            "format_version": FORMAT_VERSION,
            "params": graph.params.to_dict(),
            "n": graph.n,
            "seed": int(graph.seed),
        }
    )
    for vertex, position in enumerate(graph.positions.tolist(), start=1):
        yield _dumps({"id": vertex, "pos": position})
    for source, slot, target in zip(graph.sources.tolist(), graph.slots.tolist(), graph.targets.tolist()):
        yield _dumps({"src": source, "slot": slot, "dst": target})
    if trace is not None:
        for row in trace:
            yield _dumps(row.to_dict())


class GraphFileEndpoint(GraphEndpoint):
    """
    Graph file writer

    Required config:
        file_path (str): Destination path (parent directories are created)
    """

    def load(self, graph: GraphRecord, trace: Optional[GenerationTrace] = None) -> bool:
        file_path = self.get_config("file_path")
        if not file_path:
            raise ValueError("file_path is required for graph file endpoint")
        try:
            Path(file_path).parent.mkdir(parents=True, exist_ok=True)
            with open(file_path, "w", encoding="utf-8", newline="\n") as handle:
                for line in graph_lines(graph, trace):
                    handle.write(line)
                    handle.write("\n")
            return True
        except OSError as e:
            raise RuntimeError(f"Failed to write graph file {file_path}: {e}")


def write_graph(file_path: str, graph: GraphRecord, trace: Optional[GenerationTrace] = None) -> bool:
    return GraphFileEndpoint({"file_path": file_path}).load(graph, trace)
