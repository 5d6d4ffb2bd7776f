"""The random geometric graph coupled to a GPM run"""

import logging
from typing import List

import numpy as np

from ..core.enums import IndexKind
from ..core.records import RggRecord
from ..geometry.caps import cap_area_fraction
from ..geometry.spatial_index import create_index
from ..stats.distances import adjacency_matrix, bfs_distances

logger = logging.getLogger("gpm.generator.rgg")


def generate_rgg(positions: np.ndarray, r: float, index_kind: IndexKind = IndexKind.AUTO) -> RggRecord:
    """Threshold graph: i ~ j iff D(V_i, V_j) <= r"""
    positions = np.asarray(positions, dtype=float)
    if positions.ndim != 2 or positions.shape[1] < 2:
        raise ValueError(f"Positions must be an (n, d+1) array, got shape {positions.shape}")
    n, d = positions.shape[0], positions.shape[1] - 1
    p = cap_area_fraction(d, r)
    index = create_index(index_kind, d, p, r, n)

    found: List[np.ndarray] = []
    for i in range(n):
        neighbours = index.query(positions[i])
        if neighbours.size:
            pairs = np.empty((neighbours.size, 2), dtype=np.int64)
            pairs[:, 0] = neighbours
            pairs[:, 1] = i + 1
            found.append(pairs)
        index.add(positions[i])

    if found:
        edges = np.concatenate(found)
        edges = edges[np.lexsort((edges[:, 1], edges[:, 0]))]
    else:
        edges = np.zeros((0, 2), dtype=np.int64)
    logger.debug(f"RGG on {n} points with r={r}: {edges.shape[0]} edges ({type(index).__name__})")
    return RggRecord(n=n, r=float(r), edges=edges)


def rgg_distances(rgg: RggRecord, source: int) -> np.ndarray:
    """Hop distances d_n(source, .) in the RGG; unreachable vertices get -1"""
    return bfs_distances(adjacency_matrix(rgg.n, rgg.edges), source)
