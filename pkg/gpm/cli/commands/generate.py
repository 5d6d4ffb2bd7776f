"""Generate command"""

import click

from ...core.enums import IndexKind


def generate_graph(
    d: int,
    m: int,
    delta: float,
    p: float,
    n: int,
    seed: int,
    out: str,
    kernel: str,
    index: str,
    trace: bool,
) -> None:
    """Grow one graph, write it to `out` and print a short summary"""
    from . import abort
    from ...core.params import GpmParams
    from ...endpoints.graph_file import write_graph
    from ...generator.process import generate
    from ...geometry.kernels import KernelFactory
    from ...stats.report import l_trace_summary

    try:
        spec = None if kernel == "indicator" else KernelFactory.create(kernel)
        params = GpmParams(m=m, delta=delta, p=p, d=d, kernel=spec)
        graph, generation_trace = generate(params, n, seed, index_kind=IndexKind(index))
        write_graph(out, graph, generation_trace if trace else None)
    except (ValueError, RuntimeError, OSError) as e:
        abort(e)
        return

    summary = l_trace_summary(generation_trace, params)
    click.echo(f"n={graph.n}")
    click.echo(f"edges={graph.edge_count}")
    if summary.band_hit_fraction is None:
        click.echo("L-band hit rate=n/a (no vertex with p*i >= 100)")
    else:
        click.echo(f"L-band hit rate={summary.band_hit_fraction:.4f} ({summary.band_hits}/{summary.rows})")
    click.echo(f"Wrote {out}")
