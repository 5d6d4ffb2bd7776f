"""Per-replica measurements, one class per experiment kind"""

import math
from abc import ABC, abstractmethod
from functools import lru_cache
from typing import Any, Dict, Type

import numpy as np

from ..core.config import Cell, OptionsSection
from ..core.enums import ExperimentKind
from ..core.params import GpmParams
from ..core.records import GenerationTrace, GraphRecord
from ..generator.process import generate
from ..generator.streams import make_rng
from ..geometry.estimators import estimate_fp
from ..stats.components import components
from ..stats.degrees import max_degree
from ..stats.distances import diameter
from ..stats.report import l_trace_summary
from ..stats.triangles import count_triangles
from ..theory.predictions import (
    connectivity_scale,
    eq31_probability,
    isolation_probability,
    max_degree_scale,
    triangle_slope,
    validate_events,
)

# every worker estimates F_p from the same stream
FP_ESTIMATE_SEED = 0
MIN_CONNECTED_PN = 50


@lru_cache(maxsize=None)
def estimated_fp(d: int, p: float, samples: int) -> float:
    """F_p of a grid cell, estimated once per process"""
    value, _ = estimate_fp(d, p, samples, make_rng(FP_ESTIMATE_SEED))
    return value


class Experiment(ABC):
    """Base class for experiment kinds.

    `run_replica` generates one graph and returns one result row: the cell
    identifiers, the seed, the L(n) concentration columns shared by every
    kind, and the kind's own statistics.
    """

    kind: ExperimentKind

    def __init__(self, options: OptionsSection):
        self.options = options

    def validate_cell(self, cell: Cell) -> None:
        """Reject cells this experiment cannot measure"""
        pass

    @abstractmethod
    def measure(self, graph: GraphRecord, params: GpmParams) -> Dict[str, Any]:
        """Kind-specific statistics of one graph"""
        pass

    def run_replica(self, cell: Cell, replica: int, seed: int) -> Dict[str, Any]:
        params = cell.params(self.options.kernel)
        graph, trace = generate(params, cell.n, seed, index_kind=self.options.index)
        row: Dict[str, Any] = {**cell.to_dict(), "replica": replica, "seed": seed}
        row.update(self.trace_columns(trace, params))
        row.update(self.measure(graph, params))
        return row

    def trace_columns(self, trace: GenerationTrace, params: GpmParams) -> Dict[str, Any]:
        summary = l_trace_summary(trace, params, eps=self.options.epsilon, i_min_pn=self.options.i_min_pn)
        return {
            "l_rows": summary.rows,
            "l_band_hits": summary.band_hits,
            "l_band_hit_fraction": summary.band_hit_fraction,
            "l_mean_ratio": summary.mean,
            "l_min_ratio": summary.minimum,
            "l_max_ratio": summary.maximum,
        }


class TrianglesExperiment(Experiment):
    kind = ExperimentKind.TRIANGLES

    def cell_fp(self, params: GpmParams) -> float:
        """F_p for the cell: exact at p = 1, else the configured or estimated value"""
        if params.p == 1.0:
            return 1.0
        if self.options.fp is not None:
            return self.options.fp
        return estimated_fp(params.d, params.p, self.options.fp_samples)

    def measure(self, graph: GraphRecord, params: GpmParams) -> Dict[str, Any]:
        triangles = count_triangles(graph)
        log_n = math.log(graph.n) if graph.n > 1 else None
        fp = predicted = None
        # F_p only defines the indicator kernel's slope
        if params.is_indicator:
            fp = self.cell_fp(params)
            predicted = triangle_slope(params, fp)
        return {
            "triangles_slots": triangles.slots,
            "triangles_distinct": triangles.distinct,
            "triangles_per_log_n": None if log_n is None else triangles.slots / log_n,
            "fp": fp,
            "predicted_slope": predicted,
        }


class MaxDegreeExperiment(Experiment):
    kind = ExperimentKind.MAX_DEGREE

    def measure(self, graph: GraphRecord, params: GpmParams) -> Dict[str, Any]:
        vertex, degree = max_degree(graph)
        return {
            "max_degree": degree,
            "max_degree_vertex": vertex,
            "log_max_degree": math.log(degree),
            "max_degree_normalized": degree / max_degree_scale(params, graph.n),
        }


class ConnectivityExperiment(Experiment):
    kind = ExperimentKind.CONNECTIVITY

    def validate_cell(self, cell: Cell) -> None:
        if cell.m < 2:
            raise ValueError("Connectivity experiments need m >= 2")

    def regime(self, x: float, params: GpmParams, n: int) -> str:
        """Which side of the threshold x falls on; "connected" also needs p*n >= 50"""
        if x <= self.options.connectivity_low_x:
            return "disconnected"
        if x >= self.options.connectivity_high_x and params.p * n >= MIN_CONNECTED_PN:
            return "connected"
        return "transition"

    def measure(self, graph: GraphRecord, params: GpmParams) -> Dict[str, Any]:
        summary = components(graph)
        m = params.m
        loops = graph.self_loop_mask().reshape(graph.n, m)
        x = connectivity_scale(params, graph.n)
        return {
            "connected": int(summary.is_connected),
            "component_count": summary.count,
            "isolated_count": summary.isolated_count,
            "arrived_isolated": int(np.count_nonzero(loops.all(axis=1))),
            "scale_x": x,
            "regime": self.regime(x, params, graph.n),
            "isolation_probability_last": isolation_probability(params, graph.n),
        }


class DiameterExperiment(Experiment):
    kind = ExperimentKind.DIAMETER

    def measure(self, graph: GraphRecord, params: GpmParams) -> Dict[str, Any]:
        result = diameter(graph, exact_limit=self.options.diameter_exact_limit, bfs_budget=self.options.bfs_budget)
        summary = components(graph)
        log_n = math.log(graph.n) if graph.n > 1 else None
        return {
            "diameter": result.lower,
            "diameter_upper": result.upper,
            "diameter_exact": int(result.exact),
            "connected": int(summary.is_connected),
            "largest_component": summary.sizes[0],
            "diam_per_log_n": None if log_n is None else result.lower / log_n,
        }


class LConcentrationExperiment(Experiment):
    kind = ExperimentKind.L_CONCENTRATION

    def measure(self, graph: GraphRecord, params: GpmParams) -> Dict[str, Any]:
        return {}


class Eq31Experiment(Experiment):
    """Hit indicators for each configured slot event and for all of them jointly"""

    kind = ExperimentKind.EQ31

    def validate_cell(self, cell: Cell) -> None:
        validate_events(self.options.events, m=cell.m, n=cell.n)

    def measure(self, graph: GraphRecord, params: GpmParams) -> Dict[str, Any]:
        row: Dict[str, Any] = {}
        all_hit = True
        for a, b, t in self.options.events:
            hit = graph.edge_target(b, t) == a
            all_hit = all_hit and hit
            row[f"event_{a}_{b}_{t}"] = int(hit)
            row[f"predicted_{a}_{b}_{t}"] = eq31_probability(params, [(a, b, t)], geometry_prob=params.p)
        row["all_events"] = int(all_hit)
        return row


class ExperimentFactory:
    """Factory for creating experiment instances"""

    _experiment_classes: Dict[ExperimentKind, Type[Experiment]] = {
        ExperimentKind.TRIANGLES: TrianglesExperiment,
        ExperimentKind.MAX_DEGREE: MaxDegreeExperiment,
        ExperimentKind.CONNECTIVITY: ConnectivityExperiment,
        ExperimentKind.DIAMETER: DiameterExperiment,
        ExperimentKind.L_CONCENTRATION: LConcentrationExperiment,
        ExperimentKind.EQ31: Eq31Experiment,
    }

    @classmethod
    def create(cls, kind: ExperimentKind, options: OptionsSection) -> Experiment:
        if kind not in cls._experiment_classes:
            available = ", ".join(k.value for k in cls._experiment_classes)
            raise ValueError(f"Unknown experiment kind '{kind}'. Available kinds: {available}")
        return cls._experiment_classes[kind](options)

    @classmethod
    def get_available_kinds(cls) -> list:
        return [kind.value for kind in cls._experiment_classes]

    @classmethod
    def register(cls, kind: ExperimentKind, experiment_class: Type[Experiment]) -> None:
        cls._experiment_classes[kind] = experiment_class
