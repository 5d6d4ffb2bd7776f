"""Model parameters of the geometric preferential attachment process"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from ..geometry.caps import radius_for_area
from ..geometry.kernels import IndicatorKernel, KernelFactory, PreferenceKernel

RADIUS_MATCH_TOLERANCE = 1e-9


@dataclass
class GpmParams:
    """(d, m, delta, p) plus the preference kernel.

    `r` is derived from p on the unit-area S^d. The kernel defaults to the
    indicator of the detection cap; for any other kernel `p` is read as the
    kernel integral and only feeds the predictors.
    """

    m: int
    delta: float
    p: float
    d: int = 2
    kernel: Optional[PreferenceKernel] = None
    r: float = field(init=False)

    def __post_init__(self):
        if isinstance(self.m, bool) or int(self.m) != self.m or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m}")
        if isinstance(self.d, bool) or int(self.d) != self.d or self.d < 1:
            raise ValueError(f"d must be a positive integer, got {self.d}")
        if not math.isfinite(self.delta) or self.delta <= 0:
            raise ValueError(f"delta must be positive, got {self.delta}")
        if not 0 < self.p <= 1:
            raise ValueError(f"p must lie in (0, 1], got {self.p}")

        self.m = int(self.m)
        self.d = int(self.d)
        self.delta = float(self.delta)
        self.p = float(self.p)
        self.r = radius_for_area(self.d, self.p)

        if self.kernel is None:
            self.kernel = IndicatorKernel(self.r)
        elif isinstance(self.kernel, IndicatorKernel):
            if abs(self.kernel.radius - self.r) > RADIUS_MATCH_TOLERANCE * max(self.r, 1.0):
                raise ValueError(
                    f"Indicator kernel radius {self.kernel.radius} does not match the cap radius {self.r} of p={self.p}"
                )
        else:
            self.kernel.validate()

    @property
    def is_indicator(self) -> bool:
        return self.kernel.is_indicator

    @property
    def fitness(self) -> float:
        """The weight offset m * delta"""
        return self.m * self.delta

    @property
    def kernel_spec(self) -> str:
        if self.is_indicator:
            return "indicator"
        return self.kernel.describe()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d": self.d,
            "m": self.m,
            "delta": self.delta,
            "p": self.p,
            "r": self.r,
            "kernel": self.kernel_spec,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "GpmParams":
        """Inverse of to_dict; `r` is recomputed and `kernel` may be omitted"""
        spec = data.get("kernel") or "indicator"
        kernel = None if spec == "indicator" else KernelFactory.create(spec)
        return cls(
            m=data["m"],
            delta=data["delta"],
            p=data["p"],
            d=data.get("d", 2),
            kernel=kernel,
        )
