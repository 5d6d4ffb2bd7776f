"""Triangle counts in the slot-tuple sense.

Every non-loop edge points from a newer vertex to an older one, so a
triangle a < b < c is made of c -> b, c -> a and b -> a. The slot count
weighs each vertex triple by mult(b->a) * mult(c->a) * mult(c->b): one
term per choice of edge slots t1, t2, t3.
"""

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, product
from typing import List

from ..core.records import GraphRecord


@dataclass(frozen=True)
class TriangleCount:
    slots: int
    distinct: int

    def __iter__(self):
        return iter((self.slots, self.distinct))


def out_multiplicities(graph: GraphRecord) -> List[Counter]:
    """Per vertex (0-based position), a Counter of its non-loop targets"""
    out: List[Counter] = [Counter() for _ in range(graph.n)]
    for source, target in zip(graph.sources.tolist(), graph.targets.tolist()):
        if source != target:
            out[source - 1][target] += 1
    return out


def count_triangles(graph: GraphRecord) -> TriangleCount:
    """Slot-weighted and distinct triangle counts"""
    out = out_multiplicities(graph)
    slots = 0
    distinct = 0
    for newest in out:
        if len(newest) < 2:
            continue
        for b, c_to_b in newest.items():
            older = out[b - 1]
            for a, c_to_a in newest.items():
                b_to_a = older.get(a)
                if b_to_a:
                    slots += c_to_b * c_to_a * b_to_a
                    distinct += 1
    return TriangleCount(slots=slots, distinct=distinct)


def brute_force_triangles(graph: GraphRecord) -> TriangleCount:
    """Direct enumeration over (a < b < c, t1, t2, t3); small graphs only"""
    m = graph.params.m
    slots = 0
    distinct = 0
    for a, b, c in combinations(range(1, graph.n + 1), 3):
        hits = sum(
            1
            for t1, t2, t3 in product(range(1, m + 1), repeat=3)
            if graph.edge_target(b, t1) == a and graph.edge_target(c, t2) == a and graph.edge_target(c, t3) == b
        )
        slots += hits
        distinct += hits > 0
    return TriangleCount(slots=slots, distinct=int(distinct))
