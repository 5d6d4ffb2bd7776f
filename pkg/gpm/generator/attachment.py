"""The attachment law for the (i+1)-th edge of a new vertex.

For an old vertex k the numerator is f(D(V_n, V_k)) * (deg_k + m*delta);
for the new vertex itself it is deg_n + m*delta + m - i. Under the
indicator kernel the denominator is the sum of all numerators, which
equals L(n) - m + i. For other kernels the denominator carries one more
m*delta and that residual mass goes to the self-loop.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..core.params import GpmParams
from ..core.records import GraphRecord
from ..geometry.sphere import chord_distances


@dataclass
class PartialGraph:
    """GPM_{n,i} as seen by the arriving vertex n.

    `positions` and `degrees` cover vertices 1..n-1; `new_degree` is the
    degree vertex n has gathered from its first i edges.
    """

    params: GpmParams
    positions: np.ndarray
    degrees: np.ndarray
    new_degree: int = 0

    @property
    def n(self) -> int:
        """Id of the arriving vertex"""
        return int(self.positions.shape[0]) + 1

    @classmethod
    def empty(cls, params: GpmParams) -> "PartialGraph":
        return cls(params, np.empty((0, params.d + 1)), np.zeros(0, dtype=np.int64))

    @classmethod
    def from_record(cls, graph: GraphRecord, n: int, edges_placed: int) -> "PartialGraph":
        """Rebuild GPM_{n,i} from a finished graph"""
        m = graph.params.m
        if not 1 <= n <= graph.n or not 0 <= edges_placed < m:
            raise ValueError(f"No partial state for vertex {n} after {edges_placed} edges")
        cutoff = (n - 1) * m + edges_placed
        sources, targets = graph.sources[:cutoff], graph.targets[:cutoff]
        degrees = np.zeros(n, dtype=np.int64)
        np.add.at(degrees, sources - 1, 1)
        np.add.at(degrees, targets - 1, 1)
        return cls(
            params=graph.params,
            positions=graph.positions[: n - 1],
            degrees=degrees[: n - 1],
            new_degree=int(degrees[n - 1]),
        )


def attachment_weights(state: PartialGraph, new_vertex: np.ndarray, edges_placed: int) -> Tuple[np.ndarray, float]:
    """Unnormalized attachment weights over vertices 1..n and their normalizer"""
    params = state.params
    m, fitness = params.m, params.fitness
    if not 0 <= edges_placed < m:
        raise ValueError(f"edges_placed must lie in [0, {m}), got {edges_placed}")

    new_vertex = np.asarray(new_vertex, dtype=float)
    if state.positions.shape[0] == 0:
        kernel_values = np.zeros(0)
    elif params.is_indicator and params.p == 1.0:
        kernel_values = np.ones(state.positions.shape[0])
    else:
        kernel_values = params.kernel(chord_distances(state.positions, new_vertex))

    weights = np.empty(state.n)
    weights[:-1] = kernel_values * (state.degrees + fitness)
    weights[-1] = state.new_degree + fitness + m - edges_placed
    if not params.is_indicator:
        weights[-1] += fitness
    return weights, float(weights.sum())


def attachment_distribution(state: PartialGraph, new_vertex: np.ndarray, edges_placed: int) -> np.ndarray:
    """Probability that edge edges_placed+1 of vertex n lands on each of 1..n (last entry: self-loop)"""
    weights, denominator = attachment_weights(state, new_vertex, edges_placed)
    return weights / denominator
