"""Writers for graphs and experiment results"""

from typing import Any, Dict

from ..core.base import ResultEndpoint
from ..core.enums import OutputFormat
from .csv import CSVEndpoint
from .graph_file import GraphFileEndpoint, write_graph
from .jsonl import JSONLEndpoint

_result_endpoints = {
    OutputFormat.CSV: CSVEndpoint,
    OutputFormat.JSONL: JSONLEndpoint,
}


def create_result_endpoint(output_format: OutputFormat, config: Dict[str, Any]) -> ResultEndpoint:
    """Result writer for the requested format"""
    if output_format not in _result_endpoints:
        raise ValueError(f"Unknown output format: {output_format}")
    return _result_endpoints[output_format](config)


__all__ = [
    "CSVEndpoint",
    "JSONLEndpoint",
    "GraphFileEndpoint",
    "write_graph",
    "create_result_endpoint",
]
