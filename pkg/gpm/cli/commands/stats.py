"""Stats command"""

import json
from typing import Sequence

import click


def report_stats(
    graph_file: str,
    statistics: Sequence[str],
    epsilon: float,
    diameter_exact_limit: int,
    bfs_budget: int,
) -> None:
    """Print the StatsReport of a graph file as JSON"""
    from . import abort
    from ...sources.graph_file import read_graph
    from ...stats.report import compute_report

    try:
        graph, trace = read_graph(graph_file)
        report = compute_report(
            graph,
            trace,
            statistics=statistics or None,
            eps=epsilon,
            diameter_exact_limit=diameter_exact_limit,
            bfs_budget=bfs_budget,
        )
    except (ValueError, RuntimeError, OSError) as e:
        abort(e)
        return

    click.echo(json.dumps(report.to_dict(), indent=2))
