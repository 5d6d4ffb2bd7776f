"""Experiment command"""

from typing import Optional, Sequence

import click


def _parse_vars(pairs: Sequence[str]) -> dict:
    variables = {}
    for pair in pairs:
        if "=" not in pair:
            raise click.BadParameter(f"expected key=value, got '{pair}'", param_hint="--var")
        key, value = pair.split("=", 1)
        variables[key.strip()] = value.strip()
    return variables


def run_experiment_config(
    config_path: str,
    workers: Optional[int],
    var_pairs: Sequence[str],
    output: Optional[str],
    log_dir: Optional[str],
    quiet: bool,
) -> None:
    """Load an experiment config, run every replica and write the result file"""
    from . import abort
    from ...core.config import load_experiment_config
    from ...harness.aggregate import pooled_band_hit_rate
    from ...harness.runner import ExperimentRunner
    from ...utils.logging import DEFAULT_LOG_DIR

    variables = _parse_vars(var_pairs)
    try:
        config = load_experiment_config(config_path, variables)
        runner = ExperimentRunner(log_dir=log_dir or DEFAULT_LOG_DIR)
        rows = runner.run_experiment(config, workers=workers, output_path=output, quiet=quiet)
    except (ValueError, RuntimeError, OSError) as e:
        abort(e)
        return

    rate = pooled_band_hit_rate(rows)
    if rate is not None and not quiet:
        click.echo(f"L-band hit rate across replicas: {rate:.4f}")
