"""Structural report of one generated graph"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterable, Optional

import numpy as np

from ..core.params import GpmParams
from ..core.records import GenerationTrace, GraphRecord
from ..theory.predictions import DEFAULT_EPSILON, concentration_band
from .components import components
from .degrees import degree_histogram, max_degree
from .distances import DEFAULT_BFS_BUDGET, EXACT_DIAMETER_LIMIT, diameter
from .triangles import count_triangles

logger = logging.getLogger("gpm.stats")

DEFAULT_I_MIN_PN = 100.0
AVAILABLE_STATISTICS = ("triangles", "degrees", "components", "diameter", "trace")


@dataclass(frozen=True)
class LTraceSummary:
    """L(i) / ((2+delta) m p i) over trace rows with p * i >= i_min_pn"""

    rows: int
    mean: Optional[float] = None
    minimum: Optional[float] = None
    maximum: Optional[float] = None
    band_hits: Optional[int] = None
    band_hit_fraction: Optional[float] = None


def l_trace_summary(
    trace: GenerationTrace,
    params: GpmParams,
    eps: float = DEFAULT_EPSILON,
    i_min_pn: float = DEFAULT_I_MIN_PN,
) -> LTraceSummary:
    """Normalised L(i) and the share of rows inside the concentration band"""
    ids = trace.vertex_ids()
    values = trace.L_values()
    keep = params.p * ids >= i_min_pn
    if not np.any(keep):
        return LTraceSummary(rows=0)
    ids, values = ids[keep], values[keep]
    ratio = values / ((2 + params.delta) * params.m * params.p * ids)
    low, high = concentration_band(params, 1, eps)
    inside = (values >= low * ids) & (values <= high * ids)
    return LTraceSummary(
        rows=int(ids.size),
        mean=float(ratio.mean()),
        minimum=float(ratio.min()),
        maximum=float(ratio.max()),
        band_hits=int(np.count_nonzero(inside)),
        band_hit_fraction=float(inside.mean()),
    )


@dataclass
class StatsReport:
    """Statistics of one graph; unselected statistics stay None"""

    n: int
    m: int
    edges: int
    self_loops: int
    triangle_count_slots: Optional[int] = None
    triangle_count_distinct: Optional[int] = None
    max_degree: Optional[int] = None
    max_degree_vertex: Optional[int] = None
    degree_histogram: Optional[Dict[int, int]] = None
    component_count: Optional[int] = None
    isolated_count: Optional[int] = None
    is_connected: Optional[bool] = None
    diameter: Optional[int] = None
    diameter_upper: Optional[int] = None
    diameter_exact: Optional[bool] = None
    l_trace: LTraceSummary = field(default_factory=lambda: LTraceSummary(rows=0))

    def to_dict(self) -> Dict[str, Any]:
        """Flat JSON-ready mapping"""
        data = asdict(self)
        trace = data.pop("l_trace")
        for key, value in trace.items():
            data[f"l_trace_{key}"] = value
        if self.degree_histogram is not None:
            data["degree_histogram"] = {str(k): v for k, v in self.degree_histogram.items()}
        return data


def compute_report(
    graph: GraphRecord,
    trace: Optional[GenerationTrace] = None,
    statistics: Optional[Iterable[str]] = None,
    eps: float = DEFAULT_EPSILON,
    i_min_pn: float = DEFAULT_I_MIN_PN,
    diameter_exact_limit: int = EXACT_DIAMETER_LIMIT,
    bfs_budget: int = DEFAULT_BFS_BUDGET,
) -> StatsReport:
    """Compute the selected statistics (all by default)"""
    selected = set(AVAILABLE_STATISTICS if statistics is None else statistics)
    unknown = selected - set(AVAILABLE_STATISTICS)
    if unknown:
        raise ValueError(
            f"Unknown statistics: {', '.join(sorted(unknown))}. Available: {', '.join(AVAILABLE_STATISTICS)}"
        )

    report = StatsReport(
        n=graph.n,
        m=graph.params.m,
        edges=graph.edge_count,
        self_loops=int(np.count_nonzero(graph.self_loop_mask())),
    )
    if "triangles" in selected:
        triangles = count_triangles(graph)
        report.triangle_count_slots = triangles.slots
        report.triangle_count_distinct = triangles.distinct
    if "degrees" in selected:
        report.max_degree_vertex, report.max_degree = max_degree(graph)
        report.degree_histogram = degree_histogram(graph)
    if "components" in selected:
        summary = components(graph)
        report.component_count = summary.count
        report.isolated_count = summary.isolated_count
        report.is_connected = summary.is_connected
    if "diameter" in selected:
        result = diameter(graph, exact_limit=diameter_exact_limit, bfs_budget=bfs_budget)
        report.diameter = result.lower
        report.diameter_upper = result.upper
        report.diameter_exact = result.exact
    if "trace" in selected and trace is not None and len(trace):
        report.l_trace = l_trace_summary(trace, graph.params, eps=eps, i_min_pn=i_min_pn)

    logger.debug(f"Computed {', '.join(sorted(selected))} for n={graph.n}")
    return report
