"""Enums for GPM types"""

from enum import Enum


class ExperimentKind(Enum):
    """Available experiment kinds"""
    TRIANGLES = "triangles"
    MAX_DEGREE = "max_degree"
    CONNECTIVITY = "connectivity"
    DIAMETER = "diameter"
    L_CONCENTRATION = "L_concentration"
    EQ31 = "eq31"


class KernelKind(Enum):
    """Available preference kernel types"""
    INDICATOR = "indicator"
    CONSTANT = "constant"
    TABLE = "table"


class OutputFormat(Enum):
    """Result file formats"""
    CSV = "csv"
    JSONL = "jsonl"


class IndexKind(Enum):
    """Neighbour search strategies"""
    AUTO = "auto"
    BRUTE_FORCE = "brute_force"
    LATITUDE_BANDS = "latitude_bands"
