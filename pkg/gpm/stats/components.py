"""Connected components of the simple undirected graph"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..core.records import GraphRecord


class UnionFind:
    """Disjoint sets over 0..n-1 with union by rank and path halving"""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        """Merge the sets of x and y; False if they were already joined"""
        px, py = self.find(x), self.find(y)
        if px == py:
            return False
        if self.rank[px] < self.rank[py]:
            px, py = py, px
        self.parent[py] = px
        if self.rank[px] == self.rank[py]:
            self.rank[px] += 1
        return True

    def roots(self) -> np.ndarray:
        return np.array([self.find(x) for x in range(len(self.parent))], dtype=np.int64)


@dataclass(frozen=True)
class ComponentSummary:
    """C_n, I_n and the component sizes in decreasing order"""

    count: int
    isolated_count: int
    sizes: Tuple[int, ...]

    @property
    def is_connected(self) -> bool:
        return self.count == 1

    def __iter__(self):
        return iter((self.count, self.isolated_count, self.sizes))


def components(graph: GraphRecord) -> ComponentSummary:
    """Union-find over the non-loop edges; isolated vertices are singleton components"""
    forest = UnionFind(graph.n)
    mask = ~graph.self_loop_mask()
    for source, target in zip(graph.sources[mask].tolist(), graph.targets[mask].tolist()):
        forest.union(source - 1, target - 1)

    _, sizes = np.unique(forest.roots(), return_counts=True)
    sizes = np.sort(sizes)[::-1]
    return ComponentSummary(
        count=int(sizes.size),
        isolated_count=int(np.count_nonzero(sizes == 1)),
        sizes=tuple(int(s) for s in sizes),
    )
