"""Exact structural statistics of generated graphs"""

from .components import ComponentSummary, UnionFind, components
from .degrees import degree_histogram, max_degree, weight_in_cap
from .distances import DiameterResult, diameter, graph_distances
from .events import EventFrequency, edge_event_frequency
from .report import LTraceSummary, StatsReport, compute_report, l_trace_summary
from .triangles import TriangleCount, brute_force_triangles, count_triangles

__all__ = [
    "ComponentSummary",
    "UnionFind",
    "components",
    "degree_histogram",
    "max_degree",
    "weight_in_cap",
    "DiameterResult",
    "diameter",
    "graph_distances",
    "EventFrequency",
    "edge_event_frequency",
    "LTraceSummary",
    "StatsReport",
    "compute_report",
    "l_trace_summary",
    "TriangleCount",
    "brute_force_triangles",
    "count_triangles",
]
