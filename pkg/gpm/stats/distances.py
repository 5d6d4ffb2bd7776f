"""Graph distances and the diameter.

Shortest paths treat the graph as simple and undirected: multi-edges are
collapsed and self-loops dropped. The diameter is the largest distance
over connected pairs; connectivity is reported separately.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from ..core.records import GraphRecord

logger = logging.getLogger("gpm.stats.distances")

EXACT_DIAMETER_LIMIT = 20_000
SOURCES_PER_BATCH_BUDGET = 4_000_000
DEFAULT_BFS_BUDGET = 2_000


def adjacency_matrix(n: int, pairs: np.ndarray) -> sparse.csr_matrix:
    """Symmetric 0/1 adjacency of 1-based vertex pairs (loops dropped)"""
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    pairs = pairs[pairs[:, 0] != pairs[:, 1]]
    rows = np.concatenate([pairs[:, 0], pairs[:, 1]]) - 1
    cols = np.concatenate([pairs[:, 1], pairs[:, 0]]) - 1
    matrix = sparse.coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(n, n)).tocsr()
    matrix.data[:] = 1
    return matrix


def graph_adjacency(graph: GraphRecord) -> sparse.csr_matrix:
    return adjacency_matrix(graph.n, graph.simple_edges())


def _hops(adjacency: sparse.csr_matrix, sources: np.ndarray, predecessors: bool = False):
    return csgraph.shortest_path(
        adjacency, method="D", directed=False, unweighted=True, indices=sources, return_predecessors=predecessors
    )


def bfs_distances(adjacency: sparse.csr_matrix, source: int) -> np.ndarray:
    """Hop counts from a 1-based source; -1 marks unreachable vertices"""
    n = adjacency.shape[0]
    if not 1 <= source <= n:
        raise ValueError(f"Source vertex {source} out of range 1..{n}")
    hops = _hops(adjacency, np.array([source - 1]))[0]
    result = np.full(n, -1, dtype=np.int64)
    reachable = np.isfinite(hops)
    result[reachable] = hops[reachable].astype(np.int64)
    return result


def graph_distances(graph: GraphRecord, source: int) -> np.ndarray:
    """p_n(source, .) in hops, -1 for vertices in other components"""
    return bfs_distances(graph_adjacency(graph), source)


@dataclass(frozen=True)
class DiameterResult:
    """Diameter bounds; lower == upper whenever `exact`"""

    lower: int
    upper: int
    exact: bool
    bfs_runs: int = 0

    @property
    def value(self) -> int:
        return self.lower


def _eccentricities(adjacency: sparse.csr_matrix, sources: np.ndarray) -> np.ndarray:
    n = adjacency.shape[0]
    batch = max(1, SOURCES_PER_BATCH_BUDGET // max(n, 1))
    result = np.zeros(sources.size, dtype=np.int64)
    for start in range(0, sources.size, batch):
        hops = _hops(adjacency, sources[start : start + batch])
        hops[~np.isfinite(hops)] = 0
        result[start : start + batch] = hops.max(axis=1).astype(np.int64)
    return result


def _exact_diameter(adjacency: sparse.csr_matrix) -> DiameterResult:
    n = adjacency.shape[0]
    if n < 2:
        return DiameterResult(0, 0, True, 0)
    value = int(_eccentricities(adjacency, np.arange(n)).max())
    return DiameterResult(value, value, True, n)


def _double_sweep(adjacency: sparse.csr_matrix, start: int) -> Tuple[int, int]:
    """Lower bound from two BFS runs and the midpoint of the found path"""
    hops = _hops(adjacency, np.array([start]))[0]
    hops[~np.isfinite(hops)] = -1
    far = int(np.argmax(hops))
    hops, predecessors = _hops(adjacency, np.array([far]), predecessors=True)
    hops, predecessors = hops[0], predecessors[0]
    hops[~np.isfinite(hops)] = -1
    other = int(np.argmax(hops))
    length = int(hops[other])
    middle = other
    for _ in range(length // 2):
        middle = int(predecessors[middle])
    return length, middle


def _ifub(adjacency: sparse.csr_matrix, bfs_budget: int) -> DiameterResult:
    """Iterative fringe upper bounding on a connected graph"""
    degrees = np.diff(adjacency.indptr)
    lower, root = _double_sweep(adjacency, int(np.argmax(degrees)))
    levels = _hops(adjacency, np.array([root]))[0].astype(np.int64)
    runs = 3
    level = int(levels.max())
    lower = max(lower, level)
    upper = 2 * level
    while upper > lower:
        fringe = np.flatnonzero(levels == level)
        if runs + fringe.size > bfs_budget:
            logger.info(f"Diameter search stopped at BFS budget {bfs_budget}: bounds [{lower}, {upper}]")
            return DiameterResult(lower, upper, False, runs)
        runs += fringe.size
        fringe_max = int(_eccentricities(adjacency, fringe).max())
        if max(lower, fringe_max) > 2 * (level - 1):
            lower = max(lower, fringe_max)
            return DiameterResult(lower, lower, True, runs)
        lower = max(lower, fringe_max)
        upper = 2 * (level - 1)
        level -= 1
    return DiameterResult(lower, lower, True, runs)


def diameter(
    graph: GraphRecord,
    exact_limit: int = EXACT_DIAMETER_LIMIT,
    bfs_budget: int = DEFAULT_BFS_BUDGET,
) -> DiameterResult:
    """Largest hop distance over connected pairs.

    Components up to `exact_limit` vertices use BFS from every vertex;
    larger ones use double sweep plus fringe bounding, which certifies the
    exact value unless it runs out of `bfs_budget` BFS runs.
    """
    adjacency = graph_adjacency(graph)
    count, labels = csgraph.connected_components(adjacency, directed=False)
    sizes = np.bincount(labels, minlength=count)

    lower = upper = 0
    exact = True
    runs = 0
    for component in np.argsort(-sizes, kind="stable"):
        size = int(sizes[component])
        if size - 1 <= lower:
            # no pair here can beat the bound
            break
        members = np.flatnonzero(labels == component)
        sub = adjacency[members][:, members]
        if size <= exact_limit:
            result = _exact_diameter(sub)
        else:
            result = _ifub(sub, bfs_budget)
        runs += result.bfs_runs
        lower = max(lower, result.lower)
        upper = max(upper, result.upper)
        exact = exact and result.exact
    upper = max(upper, lower)
    return DiameterResult(lower, upper, exact and lower == upper, runs)

