"""Graph and result readers"""

from .graph_file import GraphFileSource, GraphFormatError, read_graph
from .results import CSVResultSource, JSONLResultSource, read_results

__all__ = [
    "GraphFileSource",
    "GraphFormatError",
    "read_graph",
    "CSVResultSource",
    "JSONLResultSource",
    "read_results",
]
