"""Aggregate command"""

import json
from dataclasses import asdict
from typing import Optional, Sequence

import click
from rich.console import Console
from rich.table import Table


def _optional(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.6g}"


def summarize_results(results_file: str, statistics: Sequence[str], output: Optional[str], as_json: bool) -> None:
    """Per-cell means, stderr and log n slopes of a result file"""
    from . import abort
    from ...core.base import ResultPacket
    from ...endpoints.csv import CSVEndpoint
    from ...harness.aggregate import aggregate, connectivity_curve, connectivity_verdicts, triangle_slope_ratios
    from ...sources.results import read_results

    try:
        packet = read_results(results_file)
        rows = packet.to_dict_list()
        summaries = [aggregate(rows, statistic) for statistic in statistics]
        curve = connectivity_curve(rows) if "connected" in packet.column_names else []
        # ratios reuse the triangles fit, so only when that statistic was asked for
        ratios = triangle_slope_ratios(rows) if "triangles" in statistics and "fp" in packet.column_names else []
    except (ValueError, RuntimeError, OSError) as e:
        abort(e)
        return

    table_rows = [row for summary in summaries for row in summary.to_rows()]
    if output:
        try:
            metadata = {key: value for key, value in packet.metadata.items() if key == "config_hash"}
            CSVEndpoint({"file_path": output}).load(ResultPacket.from_dict_list(table_rows, **metadata))
        except (ValueError, RuntimeError) as e:
            abort(e)
            return

    verdicts = connectivity_verdicts(curve)

    if as_json:
        payload = {
            "statistics": table_rows,
            "fits": [{"statistic": s.statistic, **asdict(fit)} for s in summaries for fit in s.fits],
            "connectivity_curve": [asdict(point) for point in curve],
            "slope_ratios": [{**asdict(ratio), "ratio_error": ratio.ratio_error} for ratio in ratios],
            "connectivity_verdicts": [{**asdict(verdict), "ok": verdict.ok} for verdict in verdicts],
        }
        click.echo(json.dumps(payload, indent=2))
        return

    console = Console()
    for summary in summaries:
        table = Table(title=f"{summary.statistic} ({summary.column})")
        for column in ("cell", "d", "m", "delta", "p", "n", "count", "mean", "stderr"):
            table.add_column(column, justify="right")
        for cell in summary.cells:
            table.add_row(
                str(cell.cell), str(cell.d), str(cell.m), f"{cell.delta:g}", f"{cell.p:g}", str(cell.n),
                str(cell.count), f"{cell.mean:.6g}", _optional(cell.stderr),
            )
        console.print(table)
        for fit in summary.fits:
            console.print(
                f"  slope vs log n (d={fit.d} m={fit.m} delta={fit.delta:g} p={fit.p:g}): "
                f"{fit.slope:.6g} ± {fit.slope_stderr:.2g} over {fit.points} cells"
            )
        console.print()

    if curve:
        table = Table(title="P(connected) vs x = p^(m/(m-1)) n")
        for column in ("cell", "m", "p", "n", "x", "P(connected)", "stderr", "regime"):
            table.add_column(column, justify="right")
        for point in curve:
            table.add_row(
                str(point.cell), str(point.m), f"{point.p:g}", str(point.n), f"{point.x:.4g}",
                f"{point.probability:.3f}", f"{point.stderr:.3f}", point.regime or "",
            )
        console.print(table)
        for verdict in verdicts:
            status = "[bold green]OK[/bold green]" if verdict.ok else "[bold red]FAIL[/bold red]"
            console.print(f"  {verdict.regime} regime: {verdict.passed} of {verdict.cells} cells {status}")

    if ratios:
        table = Table(title="Triangle slope vs p = 1")
        for column in ("d", "m", "delta", "p", "slope", "predicted", "ratio", "F_p / p", "rel. error"):
            table.add_column(column, justify="right")
        for ratio in ratios:
            table.add_row(
                str(ratio.d), str(ratio.m), f"{ratio.delta:g}", f"{ratio.p:g}", f"{ratio.slope:.6g}",
                _optional(ratio.predicted_slope), _optional(ratio.ratio), _optional(ratio.predicted_ratio),
                _optional(ratio.ratio_error),
            )
        console.print(table)
