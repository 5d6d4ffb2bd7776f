"""Reproducible ensemble experiments over parameter grids"""

from .aggregate import (
    AggregateSummary,
    CellSummary,
    CurvePoint,
    RegimeVerdict,
    SlopeFit,
    SlopeRatio,
    Statistic,
    aggregate,
    connectivity_curve,
    connectivity_verdicts,
    monotone_violations,
    ols_slope,
    pooled_band_hit_rate,
    triangle_slope_ratios,
)
from .experiments import Experiment, ExperimentFactory
from .runner import ExperimentRunner, run_experiment

__all__ = [
    "AggregateSummary",
    "CellSummary",
    "CurvePoint",
    "RegimeVerdict",
    "SlopeFit",
    "SlopeRatio",
    "Statistic",
    "aggregate",
    "connectivity_curve",
    "connectivity_verdicts",
    "monotone_violations",
    "ols_slope",
    "pooled_band_hit_rate",
    "triangle_slope_ratios",
    "Experiment",
    "ExperimentFactory",
    "ExperimentRunner",
    "run_experiment",
]
