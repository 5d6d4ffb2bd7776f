"""The sequential GPM process"""

import logging
import time
from typing import List, Optional, Tuple

import numpy as np

from ..core.enums import IndexKind
from ..core.params import GpmParams
from ..core.records import EdgeRecord, GenerationTrace, GraphRecord, TraceRow
from ..geometry.spatial_index import create_index
from ..geometry.sphere import SpherePoint, chord_distances, sample_uniform_array
from .streams import make_rng

logger = logging.getLogger("gpm.generator")


class GpmProcess:
    """Grows GPM_n one vertex at a time.

    Three draw strategies share the same attachment law:

    * full sphere (indicator kernel, p = 1): every old vertex is a
      candidate; degree-proportional picks come from a list holding each
      vertex once per unit of degree, fitness picks are uniform
    * detection cap (indicator kernel, p < 1): candidates come from the
      spatial index and are sampled through a local prefix sum that is
      updated between the m draws
    * general kernel: every old vertex is weighted by f(D) and the
      self-loop takes the extra m*delta of the denominator

    Each edge consumes exactly one uniform draw.
    """

    def __init__(
        self,
        params: GpmParams,
        rng: np.random.Generator,
        capacity: int = 1024,
        index_kind: IndexKind = IndexKind.AUTO,
    ):
        self.params = params
        self.rng = rng
        capacity = max(int(capacity), 1)
        if not params.is_indicator:
            # general kernels scan every old vertex
            index_kind = IndexKind.BRUTE_FORCE
        self.index = create_index(index_kind, params.d, params.p, params.r, capacity)
        self.degrees = np.zeros(capacity, dtype=np.int64)
        self.targets = np.zeros(capacity * params.m, dtype=np.int64)
        self.trace = GenerationTrace()
        self.full_sphere = params.is_indicator and params.p == 1.0
        # vertex ids repeated once per unit of degree (full-sphere draws only)
        self._endpoints = np.zeros(2 * capacity * params.m if self.full_sphere else 0, dtype=np.int64)
        self._endpoint_count = 0

    @property
    def n(self) -> int:
        return len(self.index)

    def _grow(self) -> None:
        capacity = 2 * self.degrees.shape[0]
        self.degrees = np.concatenate([self.degrees, np.zeros(capacity - self.degrees.shape[0], dtype=np.int64)])
        self.targets = np.concatenate([self.targets, np.zeros(capacity * self.params.m - self.targets.shape[0], dtype=np.int64)])
        if self.full_sphere:
            extra = 2 * capacity * self.params.m - self._endpoints.shape[0]
            self._endpoints = np.concatenate([self._endpoints, np.zeros(extra, dtype=np.int64)])

    def add_vertex(self, position: Optional[np.ndarray] = None) -> Tuple[SpherePoint, List[EdgeRecord], TraceRow]:
        """Place vertex n+1 and its m edges"""
        if position is None:
            position = sample_uniform_array(self.params.d, 1, self.rng)[0]
        vertex = self.n + 1
        if vertex > self.degrees.shape[0]:
            self._grow()

        if self.full_sphere:
            targets, row = self._attach_full_sphere(vertex)
        elif self.params.is_indicator:
            targets, row = self._attach_in_cap(vertex, position)
        else:
            targets, row = self._attach_with_kernel(vertex, position)

        self.index.add(position)
        m = self.params.m
        self.targets[(vertex - 1) * m : vertex * m] = targets
        self.trace.append(row)
        edges = [EdgeRecord(vertex, slot + 1, int(target)) for slot, target in enumerate(targets)]
        return SpherePoint.from_array(position), edges, row

    def _attach_full_sphere(self, vertex: int) -> Tuple[List[int], TraceRow]:
        m, fitness = self.params.m, self.params.fitness
        old = vertex - 1
        degree_sum = self._endpoint_count
        L_degree = degree_sum + 2 * m
        L = L_degree + (old + 1) * fitness

        new_degree = 0
        targets: List[int] = []
        denominators: List[float] = []
        denominator_degrees: List[int] = []
        for i in range(m):
            degree_sum = self._endpoint_count
            self_weight = new_degree + fitness + m - i
            denominator = degree_sum + old * fitness + self_weight
            denominators.append(float(denominator))
            denominator_degrees.append(degree_sum + new_degree + m - i)

            u = self.rng.random() * denominator
            if u < degree_sum:
                target = int(self._endpoints[min(int(u), degree_sum - 1)])
            elif u < degree_sum + old * fitness:
                target = min(int((u - degree_sum) / fitness), old - 1) + 1
            else:
                target = vertex

            if target == vertex:
                new_degree += 2
            else:
                new_degree += 1
                self.degrees[target - 1] += 1
                self._endpoints[self._endpoint_count] = target
                self._endpoint_count += 1
            targets.append(target)

        # the new vertex joins the endpoint list once its step is over
        self.degrees[vertex - 1] = new_degree
        self._endpoints[self._endpoint_count : self._endpoint_count + new_degree] = vertex
        self._endpoint_count += new_degree

        row = TraceRow(
            n=vertex,
            L=float(L),
            candidates=old,
            denominators=tuple(denominators),
            L_degree=int(L_degree),
            denominator_degrees=tuple(denominator_degrees),
        )
        return targets, row

    def _attach_in_cap(self, vertex: int, position: np.ndarray) -> Tuple[List[int], TraceRow]:
        m, fitness = self.params.m, self.params.fitness
        candidates = self.index.query(position)
        local_degrees = self.degrees[candidates - 1].copy()
        L_degree = int(local_degrees.sum()) + 2 * m
        L = L_degree + (candidates.size + 1) * fitness
        return self._draw_local(vertex, candidates, local_degrees, None, L, L_degree)

    def _attach_with_kernel(self, vertex: int, position: np.ndarray) -> Tuple[List[int], TraceRow]:
        fitness = self.params.fitness
        old = vertex - 1
        if old:
            kernel_values = self.params.kernel(chord_distances(self.index.positions, position))
        else:
            kernel_values = np.zeros(0)
        candidates = np.flatnonzero(kernel_values > 0.0) + 1
        kernel_values = kernel_values[candidates - 1]
        local_degrees = self.degrees[candidates - 1].copy()
        L = float((kernel_values * (local_degrees + fitness)).sum()) + self.params.m * (2.0 + self.params.delta)
        return self._draw_local(vertex, candidates, local_degrees, kernel_values, L, None)

    def _draw_local(
        self,
        vertex: int,
        candidates: np.ndarray,
        local_degrees: np.ndarray,
        kernel_values: Optional[np.ndarray],
        L: float,
        L_degree: Optional[int],
    ) -> Tuple[List[int], TraceRow]:
        m, fitness = self.params.m, self.params.fitness
        extra = 0.0 if kernel_values is None else fitness

        new_degree = 0
        targets: List[int] = []
        denominators: List[float] = []
        denominator_degrees: List[int] = []
        for i in range(m):
            weights = local_degrees + fitness
            if kernel_values is not None:
                weights = kernel_values * weights
            cumulative = np.cumsum(weights)
            candidate_total = float(cumulative[-1]) if cumulative.size else 0.0
            denominator = candidate_total + new_degree + fitness + m - i + extra
            denominators.append(denominator)
            if L_degree is not None:
                denominator_degrees.append(int(local_degrees.sum()) + new_degree + m - i)

            u = self.rng.random() * denominator
            if u < candidate_total:
                k = min(int(np.searchsorted(cumulative, u, side="right")), candidates.size - 1)
                target = int(candidates[k])
                local_degrees[k] += 1
                self.degrees[target - 1] += 1
                new_degree += 1
            else:
                target = vertex
                new_degree += 2
            targets.append(target)

        self.degrees[vertex - 1] = new_degree
        row = TraceRow(
            n=vertex,
            L=float(L),
            candidates=int(candidates.size),
            denominators=tuple(denominators),
            L_degree=L_degree,
            denominator_degrees=tuple(denominator_degrees),
        )
        return targets, row

    def record(self, seed: int = 0) -> GraphRecord:
        """Snapshot of GPM_n"""
        n, m = self.n, self.params.m
        return GraphRecord(
            params=self.params,
            seed=seed,
            positions=self.index.positions.copy(),
            sources=np.repeat(np.arange(1, n + 1, dtype=np.int64), m),
            slots=np.tile(np.arange(1, m + 1, dtype=np.int64), n),
            targets=self.targets[: n * m].copy(),
            degrees=self.degrees[:n].copy(),
        )


def generate(
    params: GpmParams,
    n: int,
    seed: int,
    index_kind: IndexKind = IndexKind.AUTO,
) -> Tuple[GraphRecord, GenerationTrace]:
    """Run the process for n vertices; deterministic in (params, n, seed)"""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    started = time.perf_counter()
    process = GpmProcess(params, make_rng(seed), capacity=n, index_kind=index_kind)
    for _ in range(n):
        process.add_vertex()
    graph = process.record(seed)
    logger.debug(
        f"Generated GPM n={n} m={params.m} delta={params.delta} p={params.p} d={params.d} "
        f"seed={seed} in {time.perf_counter() - started:.2f}s"
    )
    return graph, process.trace
