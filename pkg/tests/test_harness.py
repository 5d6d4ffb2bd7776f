"""Tests for experiment configs, the runner, aggregation and result files"""

import math

import pytest
import yaml

from gpm.core.config import ConfigError, OptionsSection, build_experiment_config, load_experiment_config
from gpm.core.enums import ExperimentKind, OutputFormat
from gpm.core.params import GpmParams
from gpm.harness import (
    CurvePoint,
    ExperimentFactory,
    ExperimentRunner,
    aggregate,
    connectivity_curve,
    connectivity_verdicts,
    monotone_violations,
    ols_slope,
    pooled_band_hit_rate,
    triangle_slope_ratios,
)
from gpm.harness.experiments import ConnectivityExperiment, TrianglesExperiment, estimated_fp
from gpm.theory.predictions import triangle_slope
from gpm.harness.runner import RESULT_FORMAT_VERSION
from gpm.sources import read_results


def _raw_config(tmp_path, kind="triangles", **overrides):
    raw = {
        "experiment": {"name": "test", "kind": kind},
        "grid": {"m": [2], "delta": [1.0], "p": [0.3], "n": [40]},
        "run": {"replicas": 2, "master_seed": 1},
        "output": {"path": str(tmp_path / "results.csv")},
    }
    for section, values in overrides.items():
        raw[section] = {**raw.get(section, {}), **values}
    return raw


def _rows(values, statistic_column, ns=(100, 1000, 10_000), replicas=2):
    """Synthetic result rows: one cell per n, `values(n, replica)` in the given column"""
    rows = []
    for cell, n in enumerate(ns):
        for replica in range(replicas):
            rows.append(
                {
                    "cell": cell,
                    "d": 2,
                    "m": 2,
                    "delta": 1.0,
                    "p": 0.3,
                    "n": n,
                    "replica": replica,
                    statistic_column: values(n, replica),
                }
            )
    return rows


def test_minimal_config(tmp_path):
    config = build_experiment_config(_raw_config(tmp_path))
    assert config.kind == ExperimentKind.TRIANGLES
    assert config.grid.d == [2]
    assert config.output.format == OutputFormat.CSV
    assert config.options.epsilon == 0.15
    assert config.run.workers is None


@pytest.mark.parametrize(
    "section,values,message",
    [
        ("grid", {"p": [1.5]}, "grid.p"),
        ("grid", {"m": []}, "grid.m"),
        ("grid", {"delta": [0.0]}, "grid.delta"),
        ("run", {"replicas": 0}, "run.replicas"),
        ("run", {"colour": "blue"}, "run.colour"),
        ("experiment", {"kind": "clustering"}, "experiment.kind"),
        ("options", {"kernel": "gaussian"}, "unknown kernel"),
    ],
)
def test_invalid_configs(tmp_path, section, values, message):
    with pytest.raises(ConfigError, match=message):
        build_experiment_config(_raw_config(tmp_path, **{section: values}))


def test_kind_requirements(tmp_path):
    with pytest.raises(ConfigError, match="options.events"):
        build_experiment_config(_raw_config(tmp_path, experiment={"kind": "eq31"}))
    with pytest.raises(ConfigError, match="m >= 2"):
        build_experiment_config(_raw_config(tmp_path, experiment={"kind": "connectivity"}, grid={"m": [1, 2]}))
    with pytest.raises(ConfigError, match="mapping"):
        build_experiment_config(["not", "a", "mapping"])


def test_vars_and_overrides(tmp_path):
    raw = _raw_config(tmp_path, grid={"n": "{{ var('sizes') }}"}, run={"master_seed": "{{ var('seed') }}"})
    raw["vars"] = {"sizes": [50, 100], "seed": 3}
    config = build_experiment_config(raw)
    assert config.grid.n == [50, 100]
    assert config.run.master_seed == 3
    overridden = build_experiment_config(raw, {"seed": 9})
    assert overridden.run.master_seed == 9


def test_env_var_rendering(tmp_path, monkeypatch):
    monkeypatch.setenv("GPM_TEST_REPLICAS", "4")
    config = build_experiment_config(_raw_config(tmp_path, run={"replicas": "{{ env_var('GPM_TEST_REPLICAS') }}"}))
    assert config.run.replicas == 4


def test_undefined_variable_is_a_config_error(tmp_path):
    with pytest.raises(ConfigError, match="render"):
        build_experiment_config(_raw_config(tmp_path, run={"replicas": "{{ missing }}"}))


def test_load_from_yaml_with_dotenv(tmp_path, monkeypatch):
    monkeypatch.setenv("GPM_DOTENV_SEED", "unused")
    monkeypatch.delenv("GPM_DOTENV_SEED")
    (tmp_path / ".env").write_text("GPM_DOTENV_SEED=17\n")
    raw = _raw_config(tmp_path, run={"master_seed": "{{ env_var('GPM_DOTENV_SEED') }}"})
    path = tmp_path / "experiment.yml"
    path.write_text(yaml.safe_dump(raw))
    assert load_experiment_config(str(path)).run.master_seed == 17


def test_load_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_experiment_config(str(tmp_path / "missing.yml"))
    path = tmp_path / "broken.yml"
    path.write_text("grid: [unclosed\n")
    with pytest.raises(ConfigError, match="Invalid YAML"):
        load_experiment_config(str(path))


def test_config_hash_ignores_workers(tmp_path):
    base = build_experiment_config(_raw_config(tmp_path))
    with_workers = build_experiment_config(_raw_config(tmp_path, run={"workers": 4}))
    other_seed = build_experiment_config(_raw_config(tmp_path, run={"master_seed": 2}))
    assert base.config_hash() == with_workers.config_hash()
    assert base.config_hash() != other_seed.config_hash()
    assert len(base.config_hash()) == 64


def test_cells_follow_grid_order(tmp_path):
    config = build_experiment_config(_raw_config(tmp_path, grid={"m": [2, 3], "n": [10, 20, 30]}))
    cells = config.cells()
    assert [cell.index for cell in cells] == list(range(6))
    assert [(cell.m, cell.n) for cell in cells] == [(2, 10), (2, 20), (2, 30), (3, 10), (3, 20), (3, 30)]
    assert cells[4].to_dict() == {"cell": 4, "d": 2, "m": 3, "delta": 1.0, "p": 0.3, "n": 20}
    assert cells[0].params().r == pytest.approx(cells[5].params().r)


def test_single_replica_gives_single_row(tmp_path):
    config = build_experiment_config(_raw_config(tmp_path, run={"replicas": 1}))
    rows = ExperimentRunner(log_dir=str(tmp_path / "logs")).run_experiment(config, workers=1, quiet=True)
    assert len(rows) == 1
    assert rows[0]["cell"] == 0 and rows[0]["replica"] == 0
    lines = (tmp_path / "results.csv").read_text().splitlines()
    assert lines[0] == f"# format_version={RESULT_FORMAT_VERSION} config_hash={config.config_hash()}"
    assert len(lines) == 3


def test_worker_count_does_not_change_the_file(tmp_path):
    raw = _raw_config(tmp_path, grid={"p": [0.3, 1.0], "n": [30, 60]}, run={"replicas": 3})
    config = build_experiment_config(raw)
    runner = ExperimentRunner(log_dir=str(tmp_path / "logs"))
    serial = tmp_path / "serial.csv"
    parallel = tmp_path / "parallel.csv"
    runner.run_experiment(config, workers=1, output_path=str(serial), quiet=True)
    runner.run_experiment(config, workers=2, output_path=str(parallel), quiet=True)
    assert serial.read_bytes() == parallel.read_bytes()


def test_same_config_twice_gives_identical_bytes(tmp_path):
    config = build_experiment_config(_raw_config(tmp_path, experiment={"kind": "diameter"}))
    runner = ExperimentRunner(log_dir=str(tmp_path / "logs"))
    first = tmp_path / "first.csv"
    second = tmp_path / "second.csv"
    runner.run_experiment(config, workers=1, output_path=str(first))
    runner.run_experiment(config, workers=1, output_path=str(second))
    assert first.read_bytes() == second.read_bytes()
    assert any((tmp_path / "logs").iterdir())


@pytest.mark.parametrize(
    "kind,columns",
    [
        ("triangles", {"triangles_slots", "triangles_distinct", "triangles_per_log_n", "fp", "predicted_slope"}),
        ("max_degree", {"max_degree", "log_max_degree", "max_degree_normalized"}),
        ("connectivity", {"connected", "component_count", "scale_x", "regime", "isolation_probability_last"}),
        ("diameter", {"diameter", "diameter_upper", "diameter_exact", "largest_component"}),
        ("L_concentration", {"l_rows", "l_band_hits", "l_mean_ratio"}),
        ("eq31", {"event_1_1_1", "event_2_30_1", "predicted_2_30_1", "all_events"}),
    ],
)
def test_every_kind_produces_its_columns(tmp_path, kind, columns):
    raw = _raw_config(tmp_path, experiment={"kind": kind}, options={"events": [[1, 1, 1], [2, 30, 1]]})
    config = build_experiment_config(raw)
    rows = ExperimentRunner().collect_rows(config, workers=1)
    assert len(rows) == 2
    for row in rows:
        assert columns <= set(row)
        assert {"cell", "d", "m", "delta", "p", "n", "replica", "seed"} <= set(row)
    if kind == "eq31":
        assert all(row["event_1_1_1"] == 1 for row in rows)


def test_unsupported_cell_is_rejected_before_running(tmp_path):
    raw = _raw_config(tmp_path, experiment={"kind": "eq31"}, options={"events": [[1, 99, 1]]})
    config = build_experiment_config(raw)
    with pytest.raises(ValueError, match="cell 0"):
        ExperimentRunner().collect_rows(config, workers=1)


def test_failing_replica_reports_its_cell(tmp_path, monkeypatch):
    config = build_experiment_config(_raw_config(tmp_path))
    experiment_class = ExperimentFactory._experiment_classes[ExperimentKind.TRIANGLES]

    def broken(self, graph, params):
        raise RuntimeError("boom")

    monkeypatch.setattr(experiment_class, "measure", broken)
    with pytest.raises(RuntimeError, match="1 cell\\(s\\) failed; first: cell 0 .*boom"):
        ExperimentRunner().run_experiment(config, workers=1, quiet=True)
    assert not (tmp_path / "results.csv").exists()


def test_experiment_factory_registry(monkeypatch):
    assert set(ExperimentFactory.get_available_kinds()) == {kind.value for kind in ExperimentKind}
    monkeypatch.setattr(ExperimentFactory, "_experiment_classes", {})
    with pytest.raises(ValueError, match="Unknown experiment kind"):
        ExperimentFactory.create(ExperimentKind.TRIANGLES, OptionsSection())
    ExperimentFactory.register(ExperimentKind.TRIANGLES, TrianglesExperiment)
    assert isinstance(ExperimentFactory.create(ExperimentKind.TRIANGLES, OptionsSection()), TrianglesExperiment)


def test_results_round_trip_through_readers(tmp_path):
    for output_format, name in (("csv", "results.csv"), ("jsonl", "results.jsonl")):
        raw = _raw_config(tmp_path, output={"path": str(tmp_path / name), "format": output_format})
        config = build_experiment_config(raw)
        rows = ExperimentRunner().run_experiment(config, workers=1, quiet=True)
        packet = read_results(str(tmp_path / name))
        assert packet.metadata["format_version"] == RESULT_FORMAT_VERSION
        assert packet.metadata["config_hash"] == config.config_hash()
        loaded = packet.to_dict_list()
        assert len(loaded) == len(rows)
        assert [row["triangles_slots"] for row in loaded] == [row["triangles_slots"] for row in rows]
        assert [row["seed"] for row in loaded] == [row["seed"] for row in rows]


def test_constant_statistic_has_zero_slope():
    summary = aggregate(_rows(lambda n, r: 5.0, "triangles_slots"), "triangles")
    assert summary.column == "triangles_slots"
    assert summary.slope == pytest.approx(0.0, abs=1e-12)
    assert [cell.mean for cell in summary.cells] == [5.0, 5.0, 5.0]
    assert all(cell.stderr == 0.0 for cell in summary.cells)


def test_exact_log_line_slope():
    summary = aggregate(_rows(lambda n, r: 2 * math.log(n) + 1, "diameter"), "diameter")
    assert abs(summary.slope - 2.0) < 1e-9
    fit = summary.fits[0]
    assert fit.intercept == pytest.approx(1.0, abs=1e-9)
    assert fit.points == 3
    rows = summary.to_rows()
    assert len(rows) == 3 and rows[0]["slope"] == summary.slope


def test_regression_needs_three_sizes():
    rows = _rows(lambda n, r: 1.0, "triangles_slots", ns=(100, 1000))
    with pytest.raises(ValueError, match="at least 3 n values"):
        aggregate(rows, "triangles")
    with pytest.raises(ValueError, match="at least 3 points"):
        ols_slope([1.0, 2.0], [1.0, 2.0])
    with pytest.raises(ValueError, match="distinct x"):
        ols_slope([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])


def test_non_regressed_statistic_and_single_replica():
    summary = aggregate(_rows(lambda n, r: 0.5, "l_band_hit_fraction", replicas=1), "l_band")
    assert summary.fits == []
    assert summary.slope is None
    assert all(cell.stderr is None and cell.count == 1 for cell in summary.cells)


def test_aggregate_errors():
    with pytest.raises(ValueError, match="No rows"):
        aggregate([], "triangles")
    with pytest.raises(ValueError, match="not found"):
        aggregate(_rows(lambda n, r: 1.0, "diameter"), "triangles")


def test_connectivity_curve():
    rows = _rows(lambda n, r: 1, "connected", ns=(100, 400), replicas=4)
    points = connectivity_curve(rows)
    assert [point.probability for point in points] == [1.0, 1.0]
    assert points[0].x == pytest.approx(0.3 ** 2 * 100)
    x, probability, stderr = points[1]
    assert (x, probability, stderr) == (pytest.approx(0.09 * 400), 1.0, 0.0)
    assert monotone_violations(points) == (0, 1)


def test_connectivity_curve_flags_drops():
    rows = _rows(lambda n, r: int(n == 100), "connected", ns=(100, 400), replicas=50)
    assert monotone_violations(connectivity_curve(rows)) == (1, 1)
    with pytest.raises(ValueError, match="connectivity experiment"):
        connectivity_curve(_rows(lambda n, r: 1, "diameter"))


def test_pooled_band_hit_rate():
    rows = [{"l_rows": 10, "l_band_hits": 9}, {"l_rows": 30, "l_band_hits": 21}, {"l_rows": 0, "l_band_hits": None}]
    assert pooled_band_hit_rate(rows) == pytest.approx(0.75)
    assert pooled_band_hit_rate([{"l_rows": 0, "l_band_hits": None}]) is None


def test_triangle_rows_carry_fp_and_predicted_slope(tmp_path):
    raw = _raw_config(tmp_path, grid={"p": [0.3, 1.0]}, options={"fp_samples": 2_000})
    rows = ExperimentRunner().collect_rows(build_experiment_config(raw), workers=1)
    small, full = [row for row in rows if row["p"] == 0.3], [row for row in rows if row["p"] == 1.0]
    assert {row["fp"] for row in full} == {1.0}
    assert full[0]["predicted_slope"] == pytest.approx(40 / 3)
    fp = estimated_fp(2, 0.3, 2_000)
    assert 0 < fp <= 1
    assert {row["fp"] for row in small} == {fp}
    assert small[0]["predicted_slope"] == pytest.approx(triangle_slope(GpmParams(m=2, delta=1.0, p=0.3), fp))


def test_configured_fp_overrides_the_estimate():
    experiment = TrianglesExperiment(OptionsSection(fp=0.8))
    assert experiment.cell_fp(GpmParams(m=2, delta=1.0, p=0.3)) == 0.8
    # p = 1 is exact regardless of the option
    assert experiment.cell_fp(GpmParams(m=2, delta=1.0, p=1.0)) == 1.0


def test_general_kernel_rows_have_no_fp(tmp_path):
    raw = _raw_config(tmp_path, grid={"p": [1.0]}, options={"kernel": "constant"})
    rows = ExperimentRunner().collect_rows(build_experiment_config(raw), workers=1)
    assert all(row["fp"] is None and row["predicted_slope"] is None for row in rows)


@pytest.mark.parametrize(
    "p,n,regime",
    [
        (0.1, 10, "disconnected"),
        (0.5, 100, "connected"),
        # x is large but p*n is below 50
        (1.0, 30, "transition"),
        (0.3, 40, "transition"),
    ],
)
def test_connectivity_regimes(p, n, regime):
    experiment = ConnectivityExperiment(OptionsSection(connectivity_low_x=0.5, connectivity_high_x=20.0))
    params = GpmParams(m=2, delta=1.0, p=p)
    assert experiment.regime(p ** 2 * n, params, n) == regime


def test_connectivity_thresholds_come_from_options():
    params = GpmParams(m=2, delta=1.0, p=0.5)
    assert ConnectivityExperiment(OptionsSection(connectivity_low_x=30.0)).regime(25.0, params, 100) == "disconnected"
    assert ConnectivityExperiment(OptionsSection(connectivity_high_x=10.0)).regime(12.0, params, 100) == "connected"


def _triangle_rows(slopes, ns=(100, 1000, 10_000)):
    """Two replicas per cell of T_n = slope * log n at each p; fp = p so the predicted ratio is 1"""
    rows = []
    for group, (p, slope) in enumerate(slopes.items()):
        for offset, n in enumerate(ns):
            for replica in range(2):
                rows.append(
                    {
                        "cell": group * len(ns) + offset,
                        "d": 2,
                        "m": 2,
                        "delta": 1.0,
                        "p": p,
                        "n": n,
                        "replica": replica,
                        "triangles_slots": slope * math.log(n),
                        "fp": p,
                        "predicted_slope": 40 / 3,
                    }
                )
    return rows


def test_triangle_slope_ratios():
    ratios = {ratio.p: ratio for ratio in triangle_slope_ratios(_triangle_rows({1.0: 10.0, 0.3: 12.0}))}
    assert ratios[1.0].ratio == pytest.approx(1.0)
    assert ratios[0.3].slope == pytest.approx(12.0)
    assert ratios[0.3].ratio == pytest.approx(1.2)
    assert ratios[0.3].predicted_ratio == pytest.approx(1.0)
    assert ratios[0.3].ratio_error == pytest.approx(0.2)
    assert ratios[0.3].predicted_slope == pytest.approx(40 / 3)


def test_triangle_slope_ratios_without_baseline():
    (ratio,) = triangle_slope_ratios(_triangle_rows({0.3: 12.0}))
    assert ratio.ratio is None and ratio.ratio_error is None
    with pytest.raises(ValueError, match="triangles experiment"):
        triangle_slope_ratios(_rows(lambda n, r: 1.0, "triangles_slots"))


def _point(cell, probability, regime):
    return CurvePoint(cell, 2, 2, 1.0, 0.5, 100 * (cell + 1), 10, 25.0, probability, 0.0, regime)


def test_connectivity_verdicts():
    points = [
        _point(0, 0.05, "disconnected"),
        _point(1, 0.2, "disconnected"),
        _point(2, 0.5, "transition"),
        _point(3, 0.95, "connected"),
    ]
    verdicts = {verdict.regime: verdict for verdict in connectivity_verdicts(points)}
    assert set(verdicts) == {"disconnected", "connected"}
    assert (verdicts["disconnected"].cells, verdicts["disconnected"].passed) == (2, 1)
    assert not verdicts["disconnected"].ok
    assert verdicts["connected"].ok
    assert connectivity_verdicts([_point(0, 0.5, None)]) == []


def test_connectivity_curve_reads_regimes(tmp_path):
    raw = _raw_config(tmp_path, experiment={"kind": "connectivity"}, grid={"p": [0.1]}, run={"replicas": 3})
    points = connectivity_curve(ExperimentRunner().collect_rows(build_experiment_config(raw), workers=1))
    assert [point.regime for point in points] == ["disconnected"]


def test_max_degree_slope_is_fitted_on_log_of_the_mean():
    # replicas straddle the mean, so only log(mean) lies exactly on the line
    rows = _rows(lambda n, r: 3 * math.sqrt(n) * (0.5 if r == 0 else 1.5), "max_degree")
    summary = aggregate(rows, "max_degree")
    assert summary.column == "max_degree"
    assert summary.slope == pytest.approx(0.5)
    assert summary.fits[0].intercept == pytest.approx(math.log(3))
    assert summary.cells[0].mean == pytest.approx(30.0)
