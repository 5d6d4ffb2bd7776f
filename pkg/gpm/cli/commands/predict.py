"""Predict command"""

import json
from typing import Optional

import click


def print_predictions(
    d: int,
    m: int,
    delta: float,
    p: Optional[float],
    n: int,
    fp: Optional[float],
    F: Optional[float],
    epsilon: float,
    as_table: bool,
    kernel: str = "indicator",
    samples: int = 100_000,
    seed: int = 0,
) -> None:
    """Print every closed-form prediction for (d, m, delta, p) at n.

    For a general kernel, p and F default to Monte Carlo estimates of the
    kernel constants and are reported as `kernel_p` and `kernel_F`.
    """
    from . import abort
    from ...core.params import GpmParams
    from ...theory.predictions import Prediction, predict_all

    constants = []
    try:
        if kernel == "indicator":
            params = GpmParams(m=m, delta=delta, p=p, d=d)
        else:
            from ...generator.streams import make_rng
            from ...geometry.estimators import estimate_kernel_constants
            from ...geometry.kernels import KernelFactory

            kernel_function = KernelFactory.create(kernel)
            if p is None or F is None:
                estimated = estimate_kernel_constants(d, kernel_function, samples, make_rng(seed))
                p = estimated.p if p is None else p
                F = estimated.F if F is None else F
            # Monte Carlo noise can push the estimate of p above 1
            p = min(p, 1.0)
            params = GpmParams(m=m, delta=delta, p=p, d=d, kernel=kernel_function)
            constants = [Prediction("kernel_p", p, "p of the kernel"), Prediction("kernel_F", F, "F of the kernel")]
        predictions = constants + predict_all(params, n, fp=fp, F=F, eps=epsilon)
    except (ValueError, OSError) as e:
        abort(e)
        return

    if not as_table:
        click.echo(json.dumps([prediction.to_dict() for prediction in predictions], indent=2))
        return
    for prediction in predictions:
        click.echo(f"{prediction.name:<24} {prediction.value:<14.6g} {prediction.form}")
