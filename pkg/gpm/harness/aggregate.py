"""Aggregation of experiment rows: cell means, regression slopes, connectivity curves"""

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from ..theory.predictions import pam_ratio

MIN_REGRESSION_POINTS = 3
DISCONNECTED_MAX_PROBABILITY = 0.1
CONNECTED_MIN_PROBABILITY = 0.9


@dataclass(frozen=True)
class Statistic:
    """A result column and how its cell means are regressed against log n"""

    column: str
    regress: bool = False
    # regress log(mean) instead of the mean
    log_mean: bool = False


STATISTICS: Dict[str, Statistic] = {
    "triangles": Statistic("triangles_slots", regress=True),
    "triangles_distinct": Statistic("triangles_distinct", regress=True),
    "diameter": Statistic("diameter", regress=True),
    "max_degree": Statistic("max_degree", regress=True, log_mean=True),
    "max_degree_normalized": Statistic("max_degree_normalized"),
    "connected": Statistic("connected"),
    "l_band": Statistic("l_band_hit_fraction"),
}


@dataclass(frozen=True)
class CellSummary:
    cell: int
    d: int
    m: int
    delta: float
    p: float
    n: int
    count: int
    mean: float
    stderr: Optional[float]


@dataclass(frozen=True)
class SlopeFit:
    """OLS fit of cell means against log n for one (d, m, delta, p) group"""

    d: int
    m: int
    delta: float
    p: float
    slope: float
    intercept: float
    slope_stderr: float
    points: int


@dataclass
class AggregateSummary:
    statistic: str
    column: str
    cells: List[CellSummary] = field(default_factory=list)
    fits: List[SlopeFit] = field(default_factory=list)

    @property
    def slope(self) -> Optional[float]:
        """Slope of the only fit; None when there is no fit or several"""
        return self.fits[0].slope if len(self.fits) == 1 else None

    def to_rows(self) -> List[Dict[str, Any]]:
        """Cell summaries with the group's slope attached, ready for a result table"""
        slopes = {(f.d, f.m, f.delta, f.p): f for f in self.fits}
        rows = []
        for summary in self.cells:
            row = {
                "statistic": self.statistic,
                "cell": summary.cell,
                "d": summary.d,
                "m": summary.m,
                "delta": summary.delta,
                "p": summary.p,
                "n": summary.n,
                "count": summary.count,
                "mean": summary.mean,
                "stderr": summary.stderr,
            }
            fit = slopes.get((summary.d, summary.m, summary.delta, summary.p))
            row["slope"] = fit.slope if fit else None
            row["slope_stderr"] = fit.slope_stderr if fit else None
            rows.append(row)
        return rows


@dataclass(frozen=True)
class CurvePoint:
    """Empirical connection probability of one cell at x = p^(m/(m-1)) n"""

    cell: int
    d: int
    m: int
    delta: float
    p: float
    n: int
    replicas: int
    x: float
    probability: float
    stderr: float
    regime: Optional[str] = None

    def __iter__(self) -> Iterator[float]:
        return iter((self.x, self.probability, self.stderr))


def _mean_and_stderr(values: np.ndarray) -> Tuple[float, Optional[float]]:
    if values.size < 2:
        return float(values.mean()), None
    return float(values.mean()), float(values.std(ddof=1) / math.sqrt(values.size))


def _group_by_cell(rows: Iterable[Dict[str, Any]]) -> Dict[int, List[Dict[str, Any]]]:
    groups: Dict[int, List[Dict[str, Any]]] = defaultdict(list)
    for row in rows:
        groups[int(row["cell"])].append(row)
    return dict(sorted(groups.items()))


def ols_slope(x: Sequence[float], y: Sequence[float]) -> Tuple[float, float, float]:
    """(slope, intercept, slope stderr) of an ordinary least squares line"""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if x.size < MIN_REGRESSION_POINTS:
        raise ValueError(f"Regression needs at least {MIN_REGRESSION_POINTS} points, got {x.size}")
    if np.ptp(x) == 0:
        raise ValueError("Regression needs at least two distinct x values")
    fit = stats.linregress(x, y)
    return float(fit.slope), float(fit.intercept), float(fit.stderr)


def aggregate(rows: Sequence[Dict[str, Any]], statistic: str) -> AggregateSummary:
    """Per-cell mean and standard error of a statistic, plus the log n slope where it applies.

    `statistic` is one of STATISTICS or any numeric result column. Slopes are
    fitted separately for every (d, m, delta, p) group and need at least three
    distinct n values in each group. For "max_degree" the fitted quantity is
    log of the cell mean, so the slope is the growth exponent.
    """
    if not rows:
        raise ValueError("No rows to aggregate")
    definition = STATISTICS.get(statistic, Statistic(statistic))
    column, regress = definition.column, definition.regress
    if column not in rows[0]:
        raise ValueError(f"Column '{column}' not found in result rows")

    summary = AggregateSummary(statistic=statistic, column=column)
    for index, members in _group_by_cell(rows).items():
        values = np.array([row[column] for row in members if row[column] is not None], dtype=float)
        if values.size == 0:
            continue
        mean, stderr = _mean_and_stderr(values)
        first = members[0]
        summary.cells.append(
            CellSummary(
                cell=index,
                d=int(first["d"]),
                m=int(first["m"]),
                delta=float(first["delta"]),
                p=float(first["p"]),
                n=int(first["n"]),
                count=int(values.size),
                mean=mean,
                stderr=stderr,
            )
        )

    if regress:
        groups: Dict[Tuple, List[CellSummary]] = defaultdict(list)
        for cell in summary.cells:
            groups[(cell.d, cell.m, cell.delta, cell.p)].append(cell)
        for (d, m, delta, p), cells in groups.items():
            distinct_n = {cell.n for cell in cells}
            if len(distinct_n) < MIN_REGRESSION_POINTS:
                raise ValueError(
                    f"Slope of '{statistic}' needs at least {MIN_REGRESSION_POINTS} n values "
                    f"(d={d} m={m} delta={delta} p={p} has {len(distinct_n)})"
                )
            means = [math.log(cell.mean) if definition.log_mean else cell.mean for cell in cells]
            slope, intercept, slope_stderr = ols_slope([math.log(cell.n) for cell in cells], means)
            summary.fits.append(SlopeFit(d, m, delta, p, slope, intercept, slope_stderr, len(cells)))

    return summary


def connectivity_curve(rows: Sequence[Dict[str, Any]]) -> List[CurvePoint]:
    """Empirical P(connected) per cell against the scale variable.

    Cells with equal x stay separate points.
    """
    points = []
    for index, members in _group_by_cell(rows).items():
        first = members[0]
        if "connected" not in first:
            raise ValueError("connectivity_curve needs rows of a connectivity experiment")
        m, p, n = int(first["m"]), float(first["p"]), int(first["n"])
        if m < 2:
            raise ValueError("connectivity_curve needs m >= 2")
        hits = np.array([row["connected"] for row in members], dtype=float)
        probability = float(hits.mean())
        points.append(
            CurvePoint(
                cell=index,
                d=int(first["d"]),
                m=m,
                delta=float(first["delta"]),
                p=p,
                n=n,
                replicas=int(hits.size),
                x=p ** (m / (m - 1)) * n,
                probability=probability,
                stderr=math.sqrt(probability * (1 - probability) / hits.size),
                regime=first.get("regime"),
            )
        )
    return points


def monotone_violations(points: Sequence[CurvePoint], sigmas: float = 3.0) -> Tuple[int, int]:
    """(violations, pairs) over adjacent n at fixed (d, m, delta, p): drops larger than `sigmas` combined stderr"""
    series: Dict[Tuple, List[CurvePoint]] = defaultdict(list)
    for point in points:
        series[(point.d, point.m, point.delta, point.p)].append(point)
    violations = pairs = 0
    for members in series.values():
        members.sort(key=lambda point: point.n)
        for before, after in zip(members, members[1:]):
            pairs += 1
            tolerance = sigmas * math.hypot(before.stderr, after.stderr)
            if after.probability < before.probability - tolerance:
                violations += 1
    return violations, pairs


def pooled_band_hit_rate(rows: Iterable[Dict[str, Any]]) -> Optional[float]:
    """Share of scored trace rows inside the concentration band, pooled over all replicas"""
    hits = total = 0
    for row in rows:
        if row.get("l_rows"):
            hits += int(row["l_band_hits"])
            total += int(row["l_rows"])
    return hits / total if total else None


@dataclass(frozen=True)
class SlopeRatio:
    """Triangle slope of one (d, m, delta, p) group against its prediction and its p = 1 baseline"""

    d: int
    m: int
    delta: float
    p: float
    slope: float
    predicted_slope: Optional[float]
    # slope(p) / slope(1) at the same (d, m, delta)
    ratio: Optional[float]
    # F_p / p
    predicted_ratio: Optional[float]

    @property
    def ratio_error(self) -> Optional[float]:
        if self.ratio is None or self.predicted_ratio is None:
            return None
        return abs(self.ratio - self.predicted_ratio) / self.predicted_ratio


def triangle_slope_ratios(rows: Sequence[Dict[str, Any]]) -> List[SlopeRatio]:
    """Slope of T_n vs log n per group, divided by the p = 1 slope of the same (d, m, delta).

    The F_p used for the prediction is read from the rows' `fp` column; groups
    without one (general kernels) get no predicted values.
    """
    if rows and "fp" not in rows[0]:
        raise ValueError("triangle_slope_ratios needs rows of a triangles experiment")
    summary = aggregate(rows, "triangles")
    predicted: Dict[Tuple, Tuple[float, float]] = {}
    for row in rows:
        if row.get("fp") is not None:
            key = (int(row["d"]), int(row["m"]), float(row["delta"]), float(row["p"]))
            predicted[key] = (float(row["fp"]), float(row["predicted_slope"]))
    baselines = {(fit.d, fit.m, fit.delta): fit.slope for fit in summary.fits if fit.p == 1.0}

    ratios = []
    for fit in summary.fits:
        baseline = baselines.get((fit.d, fit.m, fit.delta))
        fp, predicted_slope = predicted.get((fit.d, fit.m, fit.delta, fit.p), (None, None))
        ratios.append(
            SlopeRatio(
                d=fit.d,
                m=fit.m,
                delta=fit.delta,
                p=fit.p,
                slope=fit.slope,
                predicted_slope=predicted_slope,
                ratio=fit.slope / baseline if baseline else None,
                predicted_ratio=None if fp is None else pam_ratio(fp, fit.p),
            )
        )
    return ratios


@dataclass(frozen=True)
class RegimeVerdict:
    """How many cells of a connectivity regime reached the expected probability"""

    regime: str
    cells: int
    passed: int

    @property
    def ok(self) -> bool:
        return self.passed == self.cells


def connectivity_verdicts(
    points: Sequence[CurvePoint],
    disconnected_max: float = DISCONNECTED_MAX_PROBABILITY,
    connected_min: float = CONNECTED_MIN_PROBABILITY,
) -> List[RegimeVerdict]:
    """Judge curve points by the regime their rows were assigned.

    Disconnected cells pass with P(connected) <= `disconnected_max`, connected
    cells with P(connected) >= `connected_min`. Transition cells are not judged.
    """
    verdicts = []
    for regime, passes in (
        ("disconnected", lambda probability: probability <= disconnected_max),
        ("connected", lambda probability: probability >= connected_min),
    ):
        members = [point for point in points if point.regime == regime]
        if members:
            verdicts.append(RegimeVerdict(regime, len(members), sum(passes(point.probability) for point in members)))
    return verdicts
