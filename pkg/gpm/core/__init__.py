"""Shared enums, parameters and records"""

from .enums import ExperimentKind, IndexKind, KernelKind, OutputFormat

__all__ = [
    "ExperimentKind",
    "IndexKind",
    "KernelKind",
    "OutputFormat",
]
