"""Main CLI entry point for GPM"""

from typing import Optional, Tuple

import click

from ..core.enums import IndexKind
from ..utils.logging import setup_logging

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


@click.group()
@click.option("--log-level", default="WARNING", type=click.Choice(LOG_LEVELS, case_sensitive=False), help="Logging level")
@click.option("--log-dir", help="Directory for log files")
@click.version_option(package_name="gpm-toolkit")
@click.pass_context
def cli(ctx: click.Context, log_level: str, log_dir: Optional[str]) -> None:
    """GPM - geometric preferential attachment toolkit

    Grow graphs on the sphere, measure them, and check the measurements
    against closed-form predictions.
    """
    ctx.ensure_object(dict)
    ctx.obj["log_level"] = log_level
    ctx.obj["log_dir"] = log_dir

    setup_logging(level=log_level, log_dir=log_dir)


@cli.command()
@click.option("--d", "d", type=click.IntRange(min=1), default=2, show_default=True, help="Sphere dimension")
@click.option("--m", "m", type=click.IntRange(min=1), required=True, help="Edges per new vertex")
@click.option("--delta", type=click.FloatRange(min=0, min_open=True), required=True, help="Fitness offset, > 0")
@click.option("--p", "p", type=click.FloatRange(min=0, max=1, min_open=True), required=True, help="Cap area fraction")
@click.option("--n", "n", type=click.IntRange(min=1), required=True, help="Number of vertices")
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True, help="Random seed")
@click.option("--out", required=True, type=click.Path(dir_okay=False), help="Graph file to write")
@click.option("--kernel", default="indicator", show_default=True, help="indicator, constant or table:<file>")
@click.option(
    "--index",
    type=click.Choice([kind.value for kind in IndexKind]),
    default=IndexKind.AUTO.value,
    show_default=True,
    help="Spatial index for candidate queries",
)
@click.option("--trace/--no-trace", default=True, show_default=True, help="Write the per-vertex L(n) trace")
def generate(
    d: int, m: int, delta: float, p: float, n: int, seed: int, out: str, kernel: str, index: str, trace: bool
) -> None:
    """Grow one GPM graph and write it as line-delimited JSON.

    Examples:
      gpm generate --m 2 --delta 1 --p 1 --n 100000 --seed 7 --out pam.jsonl
      gpm generate --m 3 --delta 0.5 --p 0.05 --n 20000 --out geo.jsonl
    """
    from .commands.generate import generate_graph

    generate_graph(d, m, delta, p, n, seed, out, kernel, index, trace)


@cli.command()
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--triangles", is_flag=True, help="Triangle counts (slot and distinct)")
@click.option("--degrees", is_flag=True, help="Max degree and degree histogram")
@click.option("--components", is_flag=True, help="Connected components")
@click.option("--diameter", is_flag=True, help="Graph diameter")
@click.option("--trace", is_flag=True, help="L(n) concentration over the stored trace")
@click.option("--epsilon", type=click.FloatRange(min=0, min_open=True), default=0.15, show_default=True)
@click.option("--diameter-exact-limit", type=click.IntRange(min=1), default=20_000, show_default=True)
@click.option("--bfs-budget", type=click.IntRange(min=3), default=2_000, show_default=True)
def stats(
    graph_file: str,
    triangles: bool,
    degrees: bool,
    components: bool,
    diameter: bool,
    trace: bool,
    epsilon: float,
    diameter_exact_limit: int,
    bfs_budget: int,
) -> None:
    """Print a JSON report of a graph file. Without flags every statistic is computed."""
    from .commands.stats import report_stats

    flags = {"triangles": triangles, "degrees": degrees, "components": components, "diameter": diameter, "trace": trace}
    selected = [name for name, enabled in flags.items() if enabled]
    report_stats(graph_file, selected, epsilon, diameter_exact_limit, bfs_budget)


@cli.command()
@click.option("--d", "d", type=click.IntRange(min=1), default=2, show_default=True, help="Sphere dimension")
@click.option("--m", "m", type=click.IntRange(min=1), required=True)
@click.option("--delta", type=click.FloatRange(min=0, min_open=True), required=True)
@click.option(
    "--p", "p", type=click.FloatRange(min=0, max=1, min_open=True), help="Cap area; estimated for a general kernel"
)
@click.option("--n", "n", type=click.IntRange(min=1), default=100_000, show_default=True, help="Graph size")
@click.option("--fp", type=click.FloatRange(min=0, max=1, min_open=True), help="F_p (see `gpm fp`); 1 at p=1")
@click.option("--F", "F", type=click.FloatRange(min=0, min_open=True), help="Kernel triangle constant F; estimated when omitted")
@click.option("--kernel", default="indicator", show_default=True, help="indicator, constant or table:<file>")
@click.option("--samples", type=click.IntRange(min=1), default=100_000, show_default=True, help="Kernel constant samples")
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--epsilon", type=click.FloatRange(min=0, min_open=True), default=0.15, show_default=True)
@click.option("--table", "as_table", is_flag=True, help="Print aligned text instead of JSON")
def predict(
    d: int,
    m: int,
    delta: float,
    p: Optional[float],
    n: int,
    fp: Optional[float],
    F: Optional[float],
    kernel: str,
    samples: int,
    seed: int,
    epsilon: float,
    as_table: bool,
) -> None:
    """Closed-form predictions for the given parameters, as JSON"""
    from .commands.predict import print_predictions

    if kernel == "indicator" and p is None:
        raise click.UsageError("--p is required with the indicator kernel")
    print_predictions(d, m, delta, p, n, fp, F, epsilon, as_table, kernel=kernel, samples=samples, seed=seed)


@cli.command()
@click.option("--d", "d", type=click.IntRange(min=1), default=2, show_default=True, help="Sphere dimension")
@click.option("--p", "p", type=click.FloatRange(min=0, max=1, min_open=True), default=1.0, show_default=True)
@click.option("--samples", type=click.IntRange(min=1), default=100_000, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--inner-samples", type=click.IntRange(min=1), default=10_000, show_default=True, help="Lens samples, d >= 3")
@click.option("--kernel", default="indicator", show_default=True, help="indicator or table:<file>")
@click.option("--json", "as_json", is_flag=True, help="Print JSON")
def fp(d: int, p: float, samples: int, seed: int, inner_samples: int, kernel: str, as_json: bool) -> None:
    """Monte Carlo estimate of F_p (or of p and F for a kernel table)"""
    from .commands.fp import estimate

    estimate(d, p, samples, seed, inner_samples, kernel, as_json)


@cli.command()
@click.argument("config_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--workers", type=click.IntRange(min=1), envvar="GPM_WORKERS", help="Worker processes [env: GPM_WORKERS]")
@click.option("--var", "var_pairs", multiple=True, help="Config variable as key=value (repeatable)")
@click.option("--output", type=click.Path(dir_okay=False), help="Override output.path")
@click.option("--quiet", is_flag=True, help="No progress lines")
@click.pass_context
def experiment(
    ctx: click.Context, config_file: str, workers: Optional[int], var_pairs: Tuple[str, ...], output: Optional[str], quiet: bool
) -> None:
    """Run an experiment config and write its result file.

    Rows are sorted by (cell, replica); the file is identical for any
    worker count.
    """
    from .commands.experiment import run_experiment_config

    run_experiment_config(config_file, workers, var_pairs, output, ctx.obj.get("log_dir"), quiet)


@cli.command()
@click.argument("results_file", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--statistic",
    "statistics",
    multiple=True,
    required=True,
    help="triangles, diameter, max_degree, connected, l_band or any result column (repeatable)",
)
@click.option("--output", type=click.Path(dir_okay=False), help="Write the summary as CSV")
@click.option("--json", "as_json", is_flag=True, help="Print JSON")
def aggregate(results_file: str, statistics: Tuple[str, ...], output: Optional[str], as_json: bool) -> None:
    """Summarize an experiment result file: cell means, stderr and log n slopes"""
    from .commands.aggregate import summarize_results

    summarize_results(results_file, statistics, output, as_json)


if __name__ == "__main__":
    cli()
