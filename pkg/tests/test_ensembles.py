"""Reduced-scale ensemble checks of the asymptotic laws, run through the experiment harness"""

import math

import numpy as np
import pytest

from gpm.core.config import build_experiment_config
from gpm.harness import ExperimentRunner, aggregate, connectivity_curve, connectivity_verdicts

pytestmark = pytest.mark.slow


def _rows(tmp_path, kind, p, n, replicas, delta=1.0):
    config = build_experiment_config(
        {
            "experiment": {"name": f"ensemble_{kind}", "kind": kind},
            "grid": {"m": [2], "delta": [delta], "p": p, "n": n},
            "run": {"replicas": replicas, "master_seed": 7},
            "output": {"path": str(tmp_path / "results.csv")},
        }
    )
    return ExperimentRunner().collect_rows(config, workers=1)


def _slope_noise(summary, log_mean=False):
    """Standard error of the log n slope propagated from the cell-mean standard errors"""
    x = np.log([cell.n for cell in summary.cells])
    weights = (x - x.mean()) / ((x - x.mean()) ** 2).sum()
    errors = np.array([cell.stderr / (cell.mean if log_mean else 1.0) for cell in summary.cells])
    return float(np.sqrt(((weights * errors) ** 2).sum()))


def test_triangle_slope_on_the_full_sphere(tmp_path):
    rows = _rows(tmp_path, "triangles", p=[1.0], n=[500, 4000, 32000], replicas=60)
    summary = aggregate(rows, "triangles")
    predicted = rows[0]["predicted_slope"]
    assert predicted == pytest.approx(40 / 3)
    assert abs(summary.slope - predicted) < 3 * _slope_noise(summary) + 0.25 * predicted


@pytest.mark.parametrize("delta", [1.0, 3.0])
def test_max_degree_exponent(tmp_path, delta):
    rows = _rows(tmp_path, "max_degree", p=[0.3], n=[500, 2000, 8000], replicas=30, delta=delta)
    summary = aggregate(rows, "max_degree")
    exponent = 1 / (2 + delta)
    assert abs(summary.slope - exponent) < 0.1 + 3 * _slope_noise(summary, log_mean=True)


def test_connectivity_on_both_sides_of_the_threshold(tmp_path):
    replicas = 50
    rows = _rows(tmp_path, "connectivity", p=[0.01, 0.1], n=[2000], replicas=replicas)
    points = {point.p: point for point in connectivity_curve(rows)}
    assert points[0.01].regime == "disconnected"
    assert points[0.1].regime == "connected"
    # three binomial standard errors around the 0.1 and 0.9 cutoffs
    slack = 3 * math.sqrt(0.1 * 0.9 / replicas)
    verdicts = connectivity_verdicts(list(points.values()), disconnected_max=0.1 + slack, connected_min=0.9 - slack)
    assert {verdict.regime: verdict.ok for verdict in verdicts} == {"disconnected": True, "connected": True}


def test_diameter_grows_like_log_n(tmp_path):
    rows = _rows(tmp_path, "diameter", p=[0.3], n=[300, 1200, 4800], replicas=8)
    assert all(row["diameter_exact"] == 1 for row in rows)
    means = [cell.mean for cell in aggregate(rows, "diam_per_log_n").cells]
    assert max(means) < 1.3 * min(means)
