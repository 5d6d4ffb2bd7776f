"""Preference kernels f(D) weighting attachment by chord distance"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Dict, Optional, Type, Union

import numpy as np

from ..core.enums import KernelKind

ZERO_TOLERANCE = 1e-12


class PreferenceKernel(ABC):
    """Base class for all preference kernels.

    A kernel maps chord distances to nonnegative weights with f(0) = 1.
    """

    kind: KernelKind

    @abstractmethod
    def __call__(self, distances: np.ndarray) -> np.ndarray:
        """Evaluate the kernel on an array of chord distances"""
        pass

    @property
    def is_indicator(self) -> bool:
        return False

    def validate(self) -> None:
        """Check f(0) = 1"""
        at_zero = float(self(np.zeros(1))[0])
        if abs(at_zero - 1.0) > ZERO_TOLERANCE:
            raise ValueError(f"Preference kernel must satisfy f(0) = 1, got f(0) = {at_zero}")

    def describe(self) -> str:
        return self.kind.value


class IndicatorKernel(PreferenceKernel):
    """f(x) = 1{x <= r}, the detection-cap model"""

    kind = KernelKind.INDICATOR

    def __init__(self, radius: float):
        if radius <= 0.0:
            raise ValueError(f"Indicator radius must be positive, got {radius}")
        self.radius = float(radius)

    def __call__(self, distances: np.ndarray) -> np.ndarray:
        return (np.asarray(distances) <= self.radius).astype(float)

    @property
    def is_indicator(self) -> bool:
        return True

    def describe(self) -> str:
        return f"indicator(r={self.radius!r})"


class ConstantKernel(PreferenceKernel):
    """f = 1 everywhere; with the general attachment law this is plain PAM"""

    kind = KernelKind.CONSTANT

    def __call__(self, distances: np.ndarray) -> np.ndarray:
        return np.ones_like(np.asarray(distances, dtype=float))


class TableKernel(PreferenceKernel):
    """Piecewise-linear kernel through (distance, weight) knots.

    Beyond the last knot the last weight is held.
    """

    kind = KernelKind.TABLE

    def __init__(self, distances: np.ndarray, weights: np.ndarray, source: Optional[str] = None):
        distances = np.asarray(distances, dtype=float)
        weights = np.asarray(weights, dtype=float)
        if distances.ndim != 1 or distances.shape != weights.shape or distances.size < 1:
            raise ValueError("Kernel table needs matching one-dimensional distance and weight columns")
        if np.any(np.diff(distances) <= 0.0):
            raise ValueError("Kernel table distances must be strictly increasing")
        if distances[0] != 0.0:
            raise ValueError(f"Kernel table must start at distance 0, starts at {distances[0]}")
        if np.any(weights < 0.0):
            raise ValueError("Kernel table weights must be nonnegative")
        self.distances = distances
        self.weights = weights
        self.source = source
        self.validate()

    def __call__(self, distances: np.ndarray) -> np.ndarray:
        return np.interp(np.asarray(distances, dtype=float), self.distances, self.weights)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "TableKernel":
        """Load a two-column text file of (distance, weight); '#' starts a comment"""
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"Kernel table not found: {path}")
        table = np.loadtxt(path, comments="#", ndmin=2)
        if table.shape[1] != 2:
            raise ValueError(f"Kernel table {path} must have two columns, found {table.shape[1]}")
        return cls(table[:, 0], table[:, 1], source=str(path))

    def describe(self) -> str:
        return f"table:{self.source}" if self.source else "table"


class KernelFactory:
    """Factory for creating kernels from CLI/config strings"""

    _kernel_classes: Dict[str, Type[PreferenceKernel]] = {
        "indicator": IndicatorKernel,
        "constant": ConstantKernel,
        "table": TableKernel,
    }

    @classmethod
    def create(cls, spec: str, radius: Optional[float] = None) -> PreferenceKernel:
        """Create a kernel from `indicator`, `constant` or `table:<file>`"""
        name, _, argument = spec.partition(":")
        if name not in cls._kernel_classes:
            available = ", ".join(cls._kernel_classes.keys())
            raise ValueError(f"Unknown kernel '{spec}'. Available kernels: {available}")

        if name == "indicator":
            if radius is None:
                raise ValueError("Indicator kernel needs a detection radius")
            return IndicatorKernel(radius)
        if name == "table":
            if not argument:
                raise ValueError("Table kernel needs a file: table:<path>")
            return TableKernel.from_file(argument)
        return ConstantKernel()

    @classmethod
    def get_available_kernels(cls) -> list:
        return list(cls._kernel_classes.keys())
