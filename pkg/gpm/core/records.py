"""Domain records shared by generator, statistics and I/O"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np

from ..geometry.sphere import SpherePoint
from .params import GpmParams


@dataclass(frozen=True)
class EdgeRecord:
    """The slot-th out-edge of vertex `source`; ids are 1-based"""

    source: int
    slot: int
    target: int

    @property
    def is_self_loop(self) -> bool:
        return self.source == self.target


@dataclass(frozen=True)
class TraceRow:
    """Audit of one vertex arrival.

    `L` is the candidate weight sum plus m(2+delta). Under the indicator
    kernel the weight sums split into an integer degree part and a number
    of m*delta terms, so `L_degree` and `denominator_degrees` allow the
    denominator identity to be checked in exact integer arithmetic.
    """

    n: int
    L: float
    candidates: int
    denominators: Tuple[float, ...] = ()
    L_degree: Optional[int] = None
    denominator_degrees: Tuple[int, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "L": self.L,
            "candidates": self.candidates,
            "denominators": list(self.denominators),
            "L_degree": self.L_degree,
            "denominator_degrees": list(self.denominator_degrees),
        }


@dataclass
class GenerationTrace:
    """Per-vertex log of L(n), candidate-set sizes and denominator audits"""

    rows: List[TraceRow] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[TraceRow]:
        return iter(self.rows)

    def append(self, row: TraceRow) -> None:
        self.rows.append(row)

    def L_values(self) -> np.ndarray:
        return np.array([row.L for row in self.rows], dtype=float)

    def vertex_ids(self) -> np.ndarray:
        return np.array([row.n for row in self.rows], dtype=np.int64)


@dataclass(frozen=True)
class GraphRecord:
    """The generated multigraph.

    Vertex ids are 1-based. Edge arrays hold one entry per (source, slot) in
    generation order, so the edge of vertex b in slot t sits at index
    (b-1)*m + (t-1). Positions are stored as an (n, d+1) array.
    """

    params: GpmParams
    seed: int
    positions: np.ndarray
    sources: np.ndarray
    slots: np.ndarray
    targets: np.ndarray
    degrees: np.ndarray

    @property
    def n(self) -> int:
        return int(self.positions.shape[0])

    @property
    def edge_count(self) -> int:
        return int(self.sources.shape[0])

    def position(self, vertex: int) -> SpherePoint:
        return SpherePoint.from_array(self.positions[vertex - 1])

    def degree(self, vertex: int) -> int:
        return int(self.degrees[vertex - 1])

    def weight(self, vertex: int) -> float:
        return self.degree(vertex) + self.params.m * self.params.delta

    def edge_target(self, source: int, slot: int) -> int:
        """The vertex v_{source,slot}"""
        return int(self.targets[(source - 1) * self.params.m + (slot - 1)])

    def edges(self) -> List[EdgeRecord]:
        return [
            EdgeRecord(int(s), int(t), int(v))
            for s, t, v in zip(self.sources, self.slots, self.targets)
        ]

    def self_loop_mask(self) -> np.ndarray:
        return self.sources == self.targets

    def simple_edges(self) -> np.ndarray:
        """Distinct non-loop vertex pairs (target, source) as an (k, 2) array"""
        mask = ~self.self_loop_mask()
        pairs = np.stack([self.targets[mask], self.sources[mask]], axis=1)
        if pairs.shape[0] == 0:
            return pairs.reshape(0, 2)
        return np.unique(pairs, axis=0)

    def isolated_mask(self) -> np.ndarray:
        """Vertices whose m out-edges are all self-loops and with no in-edges"""
        touched = np.zeros(self.n, dtype=bool)
        mask = ~self.self_loop_mask()
        touched[self.sources[mask] - 1] = True
        touched[self.targets[mask] - 1] = True
        return ~touched

    def with_edges(self, sources: np.ndarray, slots: np.ndarray, targets: np.ndarray) -> "GraphRecord":
        """Copy with a replaced edge list (degrees recomputed)"""
        sources = np.asarray(sources, dtype=np.int64)
        slots = np.asarray(slots, dtype=np.int64)
        targets = np.asarray(targets, dtype=np.int64)
        degrees = np.zeros(self.n, dtype=np.int64)
        np.add.at(degrees, sources - 1, 1)
        np.add.at(degrees, targets - 1, 1)
        return GraphRecord(
            params=self.params,
            seed=self.seed,
            positions=self.positions,
            sources=sources,
            slots=slots,
            targets=targets,
            degrees=degrees,
        )

    @classmethod
    def from_edges(
        cls,
        params: GpmParams,
        positions: np.ndarray,
        edges: List[Tuple[int, int, int]],
        seed: int = 0,
    ) -> "GraphRecord":
        """Build a record from (source, slot, target) triples (fixtures, file reads)"""
        positions = np.asarray(positions, dtype=float)
        if edges:
            array = np.asarray(edges, dtype=np.int64)
            sources, slots, targets = array[:, 0], array[:, 1], array[:, 2]
        else:
            sources = slots = targets = np.zeros(0, dtype=np.int64)
        degrees = np.zeros(positions.shape[0], dtype=np.int64)
        np.add.at(degrees, sources - 1, 1)
        np.add.at(degrees, targets - 1, 1)
        return cls(
            params=params,
            seed=seed,
            positions=positions,
            sources=sources,
            slots=slots,
            targets=targets,
            degrees=degrees,
        )


@dataclass(frozen=True)
class RggRecord:
    """Random geometric graph on the GPM positions: i ~ j iff D(V_i, V_j) <= r.

    `edges` holds each adjacent pair once as (i, j), i < j, 1-based, sorted.
    """

    n: int
    r: float
    edges: np.ndarray

    @property
    def edge_count(self) -> int:
        return int(self.edges.shape[0])

    def edge_set(self) -> set:
        return {(int(i), int(j)) for i, j in self.edges}

    def has_edge(self, i: int, j: int) -> bool:
        a, b = (i, j) if i < j else (j, i)
        return bool(np.any((self.edges[:, 0] == a) & (self.edges[:, 1] == b)))
