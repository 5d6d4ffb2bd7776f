"""The GPM process and its coupled random geometric graph"""

from .attachment import PartialGraph, attachment_distribution, attachment_weights
from .process import GpmProcess, generate
from .rgg import generate_rgg, rgg_distances
from .streams import derive_seed, make_rng

__all__ = [
    "PartialGraph",
    "attachment_distribution",
    "attachment_weights",
    "GpmProcess",
    "generate",
    "generate_rgg",
    "rgg_distances",
    "derive_seed",
    "make_rng",
]
