"""Degree statistics"""

from typing import Dict, Tuple

import numpy as np

from ..core.records import GraphRecord
from ..geometry.sphere import chord_distances


def max_degree(graph: GraphRecord) -> Tuple[int, int]:
    """(vertex id, degree) of the largest degree; ties go to the lowest id"""
    vertex = int(np.argmax(graph.degrees))
    return vertex + 1, int(graph.degrees[vertex])


def degree_histogram(graph: GraphRecord) -> Dict[int, int]:
    """degree -> number of vertices, for degrees that occur"""
    counts = np.bincount(graph.degrees)
    return {int(degree): int(count) for degree, count in enumerate(counts) if count}


def degrees_at(graph: GraphRecord, n: int) -> np.ndarray:
    """Degrees of vertices 1..n in GPM_n"""
    if not 0 <= n <= graph.n:
        raise ValueError(f"Time {n} out of range 0..{graph.n}")
    cutoff = n * graph.params.m
    degrees = np.zeros(n, dtype=np.int64)
    np.add.at(degrees, graph.sources[:cutoff] - 1, 1)
    np.add.at(degrees, graph.targets[:cutoff] - 1, 1)
    return degrees


def weight_in_cap(graph: GraphRecord, i: int, n: int) -> float:
    """L_i(n): total weight W_j(n) of vertices j <= n within distance r of vertex i.

    i may exceed n, in which case only its position is used.
    """
    if not 1 <= i <= graph.n:
        raise ValueError(f"Vertex {i} out of range 1..{graph.n}")
    params = graph.params
    weights = degrees_at(graph, n) + params.fitness
    if params.p == 1.0:
        return float(weights.sum())
    near = chord_distances(graph.positions[:n], graph.positions[i - 1]) <= params.r
    return float(weights[near].sum())
