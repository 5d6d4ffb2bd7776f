"""Neighbour search over points on the unit-area sphere.

Both indexes answer the same question, the sorted ids of stored points
within chord distance r of a query point, and apply the same exact
distance filter, so their answers are identical.
"""

from abc import ABC, abstractmethod
from typing import List, Optional, Tuple

import numpy as np

from ..core.enums import IndexKind
from .caps import angular_radius
from .sphere import chord_distances, unit_area_radius

BRUTE_FORCE_MAX_PN = 64
MAX_BANDS = 2048
MAX_CELLS_PER_BAND = 4096
ANGLE_MARGIN = 1e-9
# above this share of stored points a query scans everything instead
DENSE_QUERY_FRACTION = 0.5
INITIAL_CELL_CAPACITY = 8


class SpatialIndex(ABC):
    """Base class for neighbour indexes.

    Points are added in id order; ids are 1-based.
    """

    def __init__(self, d: int, r: float, capacity: int = 1024):
        self.d = d
        self.r = float(r)
        self._positions = np.empty((max(capacity, 1), d + 1))
        self._count = 0

    def __len__(self) -> int:
        return self._count

    @property
    def positions(self) -> np.ndarray:
        return self._positions[: self._count]

    def add(self, position: np.ndarray) -> int:
        """Store a point and return its id"""
        if self._count == self._positions.shape[0]:
            grown = np.empty((2 * self._positions.shape[0], self.d + 1))
            grown[: self._count] = self._positions[: self._count]
            self._positions = grown
        self._positions[self._count] = position
        self._count += 1
        self._register(self._count, position)
        return self._count

    def query(self, position: np.ndarray) -> np.ndarray:
        """Sorted ids of stored points within chord distance r"""
        if self.r >= 2.0 * unit_area_radius(self.d):
            return np.arange(1, self._count + 1, dtype=np.int64)
        candidates = self._candidates(position)
        if candidates is None:
            # one vectorized pass over every stored point, ids come out sorted
            distances = chord_distances(self.positions, position)
            return np.flatnonzero(distances <= self.r).astype(np.int64) + 1
        if candidates.size == 0:
            return candidates
        distances = chord_distances(self._positions[candidates - 1], position)
        return np.sort(candidates[distances <= self.r])

    def _register(self, vertex: int, position: np.ndarray) -> None:
        pass

    @abstractmethod
    def _candidates(self, position: np.ndarray) -> Optional[np.ndarray]:
        """Superset of the ids within distance r; None means every stored point"""
        pass


class BruteForceIndex(SpatialIndex):
    """Scans every stored point"""

    def _candidates(self, position: np.ndarray) -> Optional[np.ndarray]:
        return None


class LatitudeBandIndex(SpatialIndex):
    """Latitude-band grid on S^2.

    Bands have polar-angle width close to the cap's angular radius theta;
    each band is cut into longitude cells of about the same arc length. A
    query visits the bands within theta of the point and, unless the cap
    contains a pole, only the longitudes within asin(sin theta / sin phi).

    Each cell keeps its ids in a growable int64 array; cells are numbered
    band by band, so cell c of band b is `band_offsets[b] + c`.
    """

    def __init__(self, d: int, r: float, capacity: int = 1024):
        if d != 2:
            raise ValueError(f"Latitude-band index is defined for d = 2 only, got d = {d}")
        super().__init__(d, r, capacity)
        self.theta = angular_radius(d, r)
        self.radius = unit_area_radius(d)
        self.band_count = int(min(MAX_BANDS, max(1, np.ceil(np.pi / max(self.theta, 1e-12)))))
        self.band_width = np.pi / self.band_count
        self.cell_counts = np.empty(self.band_count, dtype=np.int64)
        for band in range(self.band_count):
            lo, hi = band * self.band_width, (band + 1) * self.band_width
            widest = 1.0 if lo <= 0.5 * np.pi <= hi else max(np.sin(lo), np.sin(hi))
            cells = np.ceil(2.0 * np.pi * widest / self.band_width)
            self.cell_counts[band] = int(min(MAX_CELLS_PER_BAND, max(1, cells)))
        self.band_offsets = np.concatenate([[0], np.cumsum(self.cell_counts)[:-1]]).astype(np.int64)
        total_cells = int(self.cell_counts.sum())
        self._members: List[Optional[np.ndarray]] = [None] * total_cells
        self._sizes = np.zeros(total_cells, dtype=np.int64)

    def _angles(self, position: np.ndarray) -> Tuple[float, float]:
        polar = float(np.arccos(np.clip(position[2] / self.radius, -1.0, 1.0)))
        longitude = float(np.arctan2(position[1], position[0]) % (2.0 * np.pi))
        return polar, longitude

    def _band(self, polar: float) -> int:
        return min(int(polar / self.band_width), self.band_count - 1)

    def _cell(self, band: int, longitude: float) -> int:
        count = int(self.cell_counts[band])
        return min(int(longitude / (2.0 * np.pi / count)), count - 1)

    def _register(self, vertex: int, position: np.ndarray) -> None:
        polar, longitude = self._angles(position)
        band = self._band(polar)
        cell = int(self.band_offsets[band]) + self._cell(band, longitude)
        members, size = self._members[cell], int(self._sizes[cell])
        if members is None:
            members = self._members[cell] = np.empty(INITIAL_CELL_CAPACITY, dtype=np.int64)
        elif size == members.size:
            members = self._members[cell] = np.concatenate([members, np.empty(size, dtype=np.int64)])
        members[size] = vertex
        self._sizes[cell] = size + 1

    def cell_members(self, cell: int) -> np.ndarray:
        """Ids stored in flat cell `cell`, in insertion order"""
        members = self._members[cell]
        return np.empty(0, dtype=np.int64) if members is None else members[: self._sizes[cell]]

    def _visited_cells(self, position: np.ndarray) -> np.ndarray:
        """Flat ids of the cells a query at `position` must look at"""
        polar, longitude = self._angles(position)
        reach = self.theta + ANGLE_MARGIN
        low, high = polar - reach, polar + reach

        half_width = None
        if low > 0.0 and high < np.pi:
            ratio = np.sin(reach) / np.sin(polar)
            if ratio < 1.0:
                half_width = float(np.arcsin(ratio)) + ANGLE_MARGIN

        visited = []
        for band in range(self._band(max(low, 0.0)), self._band(min(high, np.pi)) + 1):
            count = int(self.cell_counts[band])
            cells = np.arange(count)
            if half_width is not None:
                width = 2.0 * np.pi / count
                first = int(np.floor((longitude - half_width) / width))
                last = int(np.floor((longitude + half_width) / width))
                if last - first + 1 < count:
                    cells = np.arange(first, last + 1) % count
            visited.append(cells + self.band_offsets[band])
        return np.concatenate(visited)

    def _candidates(self, position: np.ndarray) -> Optional[np.ndarray]:
        visited = self._visited_cells(position)
        visited = visited[self._sizes[visited] > 0]
        if self._sizes[visited].sum() > DENSE_QUERY_FRACTION * self._count:
            return None
        if visited.size == 0:
            return np.empty(0, dtype=np.int64)
        return np.concatenate([self._members[cell][: self._sizes[cell]] for cell in visited])


def create_index(kind: IndexKind, d: int, p: float, r: float, expected_points: int) -> SpatialIndex:
    """Pick an index; AUTO uses latitude bands only for d = 2 and p * n > 64"""
    if kind == IndexKind.BRUTE_FORCE:
        return BruteForceIndex(d, r, capacity=expected_points)
    if kind == IndexKind.LATITUDE_BANDS:
        return LatitudeBandIndex(d, r, capacity=expected_points)
    if d == 2 and p < 1.0 and p * expected_points > BRUTE_FORCE_MAX_PN:
        return LatitudeBandIndex(d, r, capacity=expected_points)
    return BruteForceIndex(d, r, capacity=expected_points)
