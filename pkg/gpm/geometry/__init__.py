"""Sphere geometry: sampling, chord distance, caps, kernels and neighbour search"""

from .sphere import (
    SpherePoint,
    chord_distance,
    chord_distances,
    sample_in_cap,
    sample_uniform,
    sample_uniform_array,
    surface_area,
    unit_area_radius,
)
from .caps import CapSpec, cap_area_fraction, lens_area_fraction, radius_for_area
from .kernels import ConstantKernel, IndicatorKernel, KernelFactory, PreferenceKernel, TableKernel
from .estimators import estimate_fp, estimate_kernel_constants, flat_limit_fp
from .spatial_index import BruteForceIndex, LatitudeBandIndex, SpatialIndex, create_index

__all__ = [
    "SpherePoint",
    "chord_distance",
    "chord_distances",
    "sample_in_cap",
    "sample_uniform",
    "sample_uniform_array",
    "surface_area",
    "unit_area_radius",
    "CapSpec",
    "cap_area_fraction",
    "lens_area_fraction",
    "radius_for_area",
    "PreferenceKernel",
    "IndicatorKernel",
    "ConstantKernel",
    "TableKernel",
    "KernelFactory",
    "estimate_fp",
    "estimate_kernel_constants",
    "flat_limit_fp",
    "SpatialIndex",
    "BruteForceIndex",
    "LatitudeBandIndex",
    "create_index",
]
