"""Spherical cap geometry in arbitrary dimension.

A cap B(x, r) is the set of sphere points within chord distance r of x. On
the unit-area S^d its area fraction depends only on r:

    p(r) = I_{s}(d/2, d/2),   s = sin^2(theta/2) = (r / 2R)^2

where theta is the polar angle of the cap boundary and I the regularized
incomplete beta function. d=1 and d=2 have elementary closed forms.
"""

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy import optimize, special

from .sphere import _check_dimension, sample_in_cap, unit_area_radius

ROUND_TRIP_TOLERANCE = 1e-9
RADIUS_RTOL = 1e-10
BISECTION_MAXITER = 60


def _check_area(p: float) -> None:
    if not 0.0 < p <= 1.0:
        raise ValueError(f"Area fraction must lie in (0, 1], got {p}")


def _check_radius(d: int, r: float) -> float:
    diameter = 2.0 * unit_area_radius(d)
    if r < 0.0 or r > diameter * (1.0 + 1e-12):
        raise ValueError(f"Chord radius must lie in [0, {diameter}], got {r}")
    return min(r, diameter)


def cap_area_fraction(d: int, r: float) -> float:
    """Area fraction of {y : D(x, y) <= r} on the unit-area S^d"""
    _check_dimension(d)
    r = _check_radius(d, r)
    half_sin = r / (2.0 * unit_area_radius(d))
    if d == 1:
        return float(2.0 / np.pi * np.arcsin(min(half_sin, 1.0)))
    if d == 2:
        return float(min(half_sin * half_sin, 1.0))
    return float(special.betainc(0.5 * d, 0.5 * d, min(half_sin * half_sin, 1.0)))


def radius_for_area(d: int, p: float) -> float:
    """Chord radius r with cap_area_fraction(d, r) = p, by bisection"""
    _check_dimension(d)
    _check_area(p)
    diameter = 2.0 * unit_area_radius(d)
    if p == 1.0:
        return diameter
    return float(
        optimize.bisect(
            lambda r: cap_area_fraction(d, r) - p,
            0.0,
            diameter,
            xtol=1e-15 * diameter,
            rtol=RADIUS_RTOL,
            maxiter=BISECTION_MAXITER,
        )
    )


def angular_radius(d: int, r: float) -> float:
    """Polar angle theta of the cap boundary for chord radius r"""
    r = _check_radius(d, r)
    return float(2.0 * np.arcsin(min(r / (2.0 * unit_area_radius(d)), 1.0)))


@dataclass(frozen=True)
class CapSpec:
    """A detection cap given both as area fraction p and chord radius r"""

    d: int
    p: float
    r: float

    def __post_init__(self) -> None:
        _check_dimension(self.d)
        _check_area(self.p)
        if self.r <= 0.0:
            raise ValueError(f"Chord radius must be positive, got {self.r}")
        area = cap_area_fraction(self.d, self.r)
        if abs(area - self.p) > ROUND_TRIP_TOLERANCE:
            raise ValueError(
                f"Inconsistent cap: radius {self.r} has area fraction {area}, not {self.p}"
            )

    @property
    def theta(self) -> float:
        return angular_radius(self.d, self.r)

    @classmethod
    def from_area(cls, d: int, p: float) -> "CapSpec":
        return cls(d=d, p=p, r=radius_for_area(d, p))

    @classmethod
    def from_radius(cls, d: int, r: float) -> "CapSpec":
        return cls(d=d, p=cap_area_fraction(d, r), r=r)


def _circle_lens(theta: float, phi: np.ndarray) -> np.ndarray:
    overlap = np.maximum(0.0, 2.0 * theta - phi) + np.maximum(0.0, 2.0 * theta - (2.0 * np.pi - phi))
    return np.minimum(overlap, 2.0 * np.pi) / (2.0 * np.pi)


def _sphere_lens_area(theta: float, phi: np.ndarray) -> np.ndarray:
    """Intersection area of two equal caps on the unit 2-sphere"""
    if theta > 0.5 * np.pi:
        # complement caps have polar angle pi - theta at the same separation
        cap = 2.0 * np.pi * (1.0 - np.cos(theta))
        return 2.0 * cap - 4.0 * np.pi + _sphere_lens_area(np.pi - theta, phi)

    area = np.zeros_like(phi)
    full = phi <= 0.0
    area[full] = 2.0 * np.pi * (1.0 - np.cos(theta))
    partial = (phi > 0.0) & (phi < 2.0 * theta)
    if np.any(partial):
        ph = phi[partial]
        cos_t, sin_t = np.cos(theta), np.sin(theta)
        half_sq = np.sin(0.5 * ph) ** 2
        side = np.clip(2.0 * cos_t * half_sq / (sin_t * np.sin(ph)), -1.0, 1.0)
        apex = np.clip(1.0 - 2.0 * half_sq / (sin_t * sin_t), -1.0, 1.0)
        area[partial] = 2.0 * np.pi - 4.0 * cos_t * np.arccos(side) - 2.0 * np.arccos(apex)
    return np.clip(area, 0.0, None)


def lens_area_fraction(
    d: int,
    r: float,
    phi: Union[float, np.ndarray],
    rng: Optional[np.random.Generator] = None,
    inner_samples: int = 10_000,
) -> Union[float, np.ndarray]:
    """Area fraction of B(x, r) ∩ B(y, r) for centers at polar separation phi.

    Exact for d = 1, 2. For d >= 3 the lens is estimated from
    `inner_samples` uniform points of one cap (shared across all phi).
    """
    _check_dimension(d)
    scalar = np.ndim(phi) == 0
    phis = np.atleast_1d(np.asarray(phi, dtype=float))
    theta = angular_radius(d, r)

    if d == 1:
        result = _circle_lens(theta, phis)
    elif d == 2:
        result = _sphere_lens_area(theta, phis) / (4.0 * np.pi)
    else:
        if rng is None:
            raise ValueError("A random stream is required for lens areas with d >= 3")
        if inner_samples < 1:
            raise ValueError(f"inner_samples must be positive, got {inner_samples}")
        p = cap_area_fraction(d, r)
        radius = unit_area_radius(d)
        pole = np.zeros(d + 1)
        pole[-1] = 1.0
        inner = sample_in_cap(d, pole, p, inner_samples, rng)
        result = np.empty_like(phis)
        for k, ph in enumerate(phis):
            other = np.zeros(d + 1)
            other[-1] = np.cos(ph) * radius
            other[0] = np.sin(ph) * radius
            diff = inner - other[None, :]
            inside = np.sqrt((diff * diff).sum(axis=1)) <= r
            result[k] = p * inside.mean()

    return float(result[0]) if scalar else result
