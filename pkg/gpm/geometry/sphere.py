"""Unit-area sphere: radius normalisation, sampling and chord distance"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple, Union

import numpy as np
from scipy import special


@dataclass(frozen=True)
class SpherePoint:
    """A location on the unit-area sphere S^d, embedded in (d+1)-space"""

    coords: Tuple[float, ...]

    @property
    def d(self) -> int:
        return len(self.coords) - 1

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float)

    @classmethod
    def from_array(cls, values: np.ndarray) -> "SpherePoint":
        return cls(tuple(float(v) for v in values))


def _check_dimension(d: int) -> None:
    if int(d) != d or d < 1:
        raise ValueError(f"Sphere dimension must be a positive integer, got {d}")


def surface_area(d: int, radius: float) -> float:
    """Surface area of S^d with the given radius: 2 pi^((d+1)/2) / Gamma((d+1)/2) * R^d"""
    _check_dimension(d)
    log_unit = np.log(2.0) + 0.5 * (d + 1) * np.log(np.pi) - special.gammaln(0.5 * (d + 1))
    return float(np.exp(log_unit) * radius ** d)


@lru_cache(maxsize=None)
def unit_area_radius(d: int) -> float:
    """Radius R(d) for which S^d has total surface area 1"""
    _check_dimension(d)
    if d == 1:
        return 1.0 / (2.0 * np.pi)
    if d == 2:
        return 1.0 / np.sqrt(4.0 * np.pi)
    log_unit = np.log(2.0) + 0.5 * (d + 1) * np.log(np.pi) - special.gammaln(0.5 * (d + 1))
    return float(np.exp(-log_unit / d))


def sample_uniform_array(d: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """`size` uniform points on the unit-area S^d as an (size, d+1) array.

    Normalised isotropic Gaussian vectors, scaled to radius R(d).
    """
    _check_dimension(d)
    vectors = rng.standard_normal((size, d + 1))
    norms = np.sqrt((vectors * vectors).sum(axis=1))
    # a zero Gaussian vector has probability zero; redraw to stay exact
    while np.any(norms == 0.0):
        bad = norms == 0.0
        vectors[bad] = rng.standard_normal((int(bad.sum()), d + 1))
        norms = np.sqrt((vectors * vectors).sum(axis=1))
    return vectors * (unit_area_radius(d) / norms)[:, None]


def sample_uniform(d: int, rng: np.random.Generator) -> SpherePoint:
    """One uniform point on the unit-area S^d"""
    return SpherePoint.from_array(sample_uniform_array(d, 1, rng)[0])


def sample_in_cap(
    d: int,
    center: np.ndarray,
    p: float,
    size: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """`size` uniform points in the cap of area fraction p around `center`.

    The polar angle phi is drawn by inverting the cap-area law
    sin^2(phi/2) = I^{-1}_{u}(d/2, d/2) with u ~ U(0, p); the direction is a
    uniform unit vector orthogonal to the center.
    """
    _check_dimension(d)
    if not 0.0 < p <= 1.0:
        raise ValueError(f"Area fraction must lie in (0, 1], got {p}")
    radius = unit_area_radius(d)
    axis = np.asarray(center, dtype=float)
    if axis.shape != (d + 1,):
        raise ValueError(f"Cap center has shape {axis.shape}, expected ({d + 1},)")
    axis = axis / np.sqrt(axis @ axis)

    half_sin_sq = special.betaincinv(0.5 * d, 0.5 * d, rng.uniform(0.0, p, size))
    cos_phi = 1.0 - 2.0 * half_sin_sq
    sin_phi = np.sqrt(np.clip(1.0 - cos_phi * cos_phi, 0.0, None))

    directions = rng.standard_normal((size, d + 1))
    directions -= np.outer(directions @ axis, axis)
    norms = np.sqrt((directions * directions).sum(axis=1))
    norms[norms == 0.0] = 1.0
    directions /= norms[:, None]

    points = cos_phi[:, None] * axis[None, :] + sin_phi[:, None] * directions
    return points * radius


def chord_distance(x: Union[SpherePoint, np.ndarray], y: Union[SpherePoint, np.ndarray]) -> float:
    """Euclidean distance between two points in the embedding space"""
    a = x.as_array() if isinstance(x, SpherePoint) else np.asarray(x, dtype=float)
    b = y.as_array() if isinstance(y, SpherePoint) else np.asarray(y, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"Dimension mismatch: points of length {a.shape[-1]} and {b.shape[-1]}")
    diff = a - b
    return float(np.sqrt((diff * diff).sum()))


def chord_distances(points: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Chord distances from every row of `points` to `x`.

    Row-wise reduction, so a given pair yields the same float whichever
    batch it is computed in.
    """
    diff = points - x[None, :]
    return np.sqrt((diff * diff).sum(axis=1))
