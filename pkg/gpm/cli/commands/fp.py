"""Fp command"""

import json

import click


def estimate(d: int, p: float, samples: int, seed: int, inner_samples: int, kernel: str, as_json: bool) -> None:
    """Monte Carlo estimate of F_p, or of (p, F) for a kernel table"""
    from . import abort
    from ...generator.streams import make_rng
    from ...geometry.estimators import estimate_fp, estimate_kernel_constants
    from ...geometry.kernels import KernelFactory

    rng = make_rng(seed)
    try:
        if kernel == "indicator":
            value, stderr = estimate_fp(d, p, samples, rng, inner_samples=inner_samples)
            result = {"d": d, "p": p, "samples": samples, "fp": value, "stderr": stderr}
        else:
            constants = estimate_kernel_constants(d, KernelFactory.create(kernel), samples, rng)
            result = {
                "d": d,
                "kernel": kernel,
                "samples": samples,
                "p": constants.p,
                "p_stderr": constants.p_stderr,
                "F": constants.F,
                "F_stderr": constants.F_stderr,
            }
    except (ValueError, OSError) as e:
        abort(e)
        return

    if as_json:
        click.echo(json.dumps(result, indent=2))
    elif kernel == "indicator":
        click.echo(f"F_p = {result['fp']:.6f} ± {result['stderr']:.6f}")
    else:
        click.echo(f"p = {result['p']:.6f} ± {result['p_stderr']:.6f}")
        click.echo(f"F = {result['F']:.6f} ± {result['F_stderr']:.6f}")
