"""Monte Carlo estimators for the geometric constants of the triangle law"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import integrate, special

from .caps import _check_area, lens_area_fraction, radius_for_area
from .kernels import PreferenceKernel
from .sphere import _check_dimension, chord_distances, sample_uniform_array, unit_area_radius

logger = logging.getLogger("gpm.geometry")

DEFAULT_INNER_SAMPLES = 10_000


def _mean_and_stderr(values: np.ndarray) -> Tuple[float, float]:
    if values.size < 2:
        return float(values.mean()), 0.0
    return float(values.mean()), float(values.std(ddof=1) / np.sqrt(values.size))


def sample_cap_separation(d: int, p: float, size: int, rng: np.random.Generator) -> np.ndarray:
    """Polar angles between a cap center and uniform points of the cap"""
    half_sin_sq = special.betaincinv(0.5 * d, 0.5 * d, rng.uniform(0.0, p, size))
    return 2.0 * np.arcsin(np.sqrt(np.clip(half_sin_sq, 0.0, 1.0)))


def estimate_fp(
    d: int,
    p: float,
    samples: int,
    rng: np.random.Generator,
    inner_samples: int = DEFAULT_INNER_SAMPLES,
) -> Tuple[float, float]:
    """Estimate F_p = E[f(V_i, V_j) | V_j in B(V_i, r)] with f = p^-1 * lens area.

    By rotation invariance only the polar separation of V_j from V_i
    matters, so V_j is drawn through its separation angle and f is the
    lens fraction at that angle divided by p. For d >= 3 one inner sample
    set is shared by all outer draws, so the returned standard error
    reflects the outer draws only.

    Returns:
        (estimate, standard error)
    """
    _check_dimension(d)
    _check_area(p)
    if samples < 1:
        raise ValueError(f"samples must be at least 1, got {samples}")
    if p == 1.0:
        return 1.0, 0.0

    r = radius_for_area(d, p)
    phis = sample_cap_separation(d, p, samples, rng)
    values = np.clip(lens_area_fraction(d, r, phis, rng=rng, inner_samples=inner_samples) / p, 0.0, 1.0)
    estimate, stderr = _mean_and_stderr(values)
    logger.debug(f"F_p(d={d}, p={p}) = {estimate:.6f} +/- {stderr:.6f} from {samples} samples")
    return estimate, stderr


def flat_limit_fp() -> float:
    """The p -> 0 limit of F_p for d = 2.

    Near the flat limit the cap is a unit disc, V_j has radial density 2t
    and f is the disc-lens area over pi.
    """

    def integrand(t: float) -> float:
        lens = 2.0 * np.arccos(0.5 * t) - 0.5 * t * np.sqrt(4.0 - t * t)
        return 2.0 * t * lens

    value, _ = integrate.quad(integrand, 0.0, 1.0)
    return float(value / np.pi)


@dataclass(frozen=True)
class KernelConstants:
    """Monte Carlo estimates of the kernel area p and triangle constant F"""

    p: float
    p_stderr: float
    F: float
    F_stderr: float

    def __iter__(self):
        # allows `p_hat, F_hat = estimate_kernel_constants(...)`
        return iter((self.p, self.F))


def estimate_kernel_constants(
    d: int,
    kernel: PreferenceKernel,
    samples: int,
    rng: np.random.Generator,
) -> KernelConstants:
    """Estimate p = int f(D(u,z)) du and F = int int f(D(u,v)) f(D(v,z)) f(D(u,z)) du dv.

    z is held at the north pole; u and v are uniform on the unit-area
    sphere, so both integrals are plain means.
    """
    _check_dimension(d)
    if samples < 1:
        raise ValueError(f"samples must be at least 1, got {samples}")
    kernel.validate()

    pole = np.zeros(d + 1)
    pole[-1] = unit_area_radius(d)
    u = sample_uniform_array(d, samples, rng)
    v = sample_uniform_array(d, samples, rng)

    f_uz = kernel(chord_distances(u, pole))
    f_vz = kernel(chord_distances(v, pole))
    diff = u - v
    f_uv = kernel(np.sqrt((diff * diff).sum(axis=1)))

    p_hat, p_err = _mean_and_stderr(f_uz)
    F_hat, F_err = _mean_and_stderr(f_uv * f_vz * f_uz)
    return KernelConstants(p=p_hat, p_stderr=p_err, F=F_hat, F_stderr=F_err)
