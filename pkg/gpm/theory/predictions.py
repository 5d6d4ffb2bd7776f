"""Closed-form predictions to compare simulations against.

All functions are pure. Lower-order corrections are dropped: the triangle
law and the edge-event formula give leading-order values, the max-degree
and connectivity predictors give normalisations rather than targets.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..core.params import GpmParams

DEFAULT_EPSILON = 0.15

Event = Tuple[int, int, int]


@dataclass(frozen=True)
class Prediction:
    """A named predicted quantity and how it enters the asymptotic law"""

    name: str
    value: float
    form: str

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "value": self.value, "form": self.form}


def _triangle_constant(m: int, delta: float) -> float:
    return m * (m - 1) * (1 + delta) ** 2 * (m * (1 + delta) + 1) / ((2 + delta) * delta ** 2)


def triangle_slope(params: GpmParams, fp: float) -> float:
    """Coefficient of log(n) in T_n under the indicator kernel"""
    if not 0 < fp <= 1:
        raise ValueError(f"F_p must lie in (0, 1], got {fp}")
    return _triangle_constant(params.m, params.delta) * fp / params.p


def triangle_slope_kernel(params: GpmParams, F: float) -> float:
    """Coefficient of log(n) in T_n for a general kernel with constants (p, F)"""
    if F <= 0:
        raise ValueError(f"F must be positive, got {F}")
    return _triangle_constant(params.m, params.delta) * F / params.p ** 3


def pam_ratio(fp: float, p: float) -> float:
    """Factor F_p / p by which GPM triangles exceed PAM triangles"""
    if not 0 < p <= 1:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    return fp / p


def triangle_expectation_pam_reference(params: GpmParams, n: float) -> float:
    """Leading-order PAM triangle count (p = 1, F_p = 1) at size n"""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    return _triangle_constant(params.m, params.delta) * math.log(n)


def max_degree_exponent(params: GpmParams) -> float:
    return 1.0 / (2.0 + params.delta)


def max_degree_scale(params: GpmParams, n: float) -> float:
    """log(1/p)^((1+delta)/(2+delta)) * (np)^(1/(2+delta)).

    At p = 1 the log factor vanishes; it is replaced by 1 so the
    n-exponent can still be checked.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    delta, p = params.delta, params.p
    log_factor = 1.0 if p == 1.0 else math.log(1.0 / p) ** ((1 + delta) / (2 + delta))
    return log_factor * (n * p) ** (1.0 / (2 + delta))


def connectivity_scale(params: GpmParams, n: float) -> float:
    """Scale variable x = p^(m/(m-1)) * n of the connectivity threshold"""
    if params.m < 2:
        raise ValueError("The connectivity scale is undefined for m = 1")
    return params.p ** (params.m / (params.m - 1)) * n


def expected_L(params: GpmParams, n: int, exact: bool = False) -> float:
    """E[L(n)] = (2+delta) m p n.

    With `exact` the finite-n value (2+delta) m (p (n-1) + 1) is returned:
    the cap holds n-1 old vertices each with probability p, and the
    m(2+delta) term stands in for the new vertex.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    scale = (2 + params.delta) * params.m
    if exact:
        return scale * (params.p * (n - 1) + 1)
    return scale * params.p * n


def concentration_band(params: GpmParams, n: int, eps: float = DEFAULT_EPSILON) -> Tuple[float, float]:
    """[(2+delta-eps) m p n, (2+delta+eps) m p n]"""
    if not 0 < eps < 2 + params.delta:
        raise ValueError(f"eps must lie in (0, {2 + params.delta}), got {eps}")
    base = params.m * params.p * n
    return (2 + params.delta - eps) * base, (2 + params.delta + eps) * base


def isolation_probability(params: GpmParams, n: int) -> float:
    """Leading-order probability that all m edges of vertex n are self-loops.

    At step i the self-loop weight is m(1+delta) + i and the normalizer is
    L(n) - m + i, with L(n) replaced by its exact expectation.
    """
    expected = expected_L(params, n, exact=True)
    m, delta = params.m, params.delta
    probability = 1.0
    for i in range(m):
        probability *= (m * (1 + delta) + i) / (expected - m + i)
    return min(probability, 1.0)


def validate_events(events: Sequence[Event], m: Optional[int] = None, n: Optional[int] = None) -> None:
    """Events are (a, b, t): slot t of vertex b points at vertex a"""
    seen = set()
    for a, b, t in events:
        if a < 1 or b < 1 or t < 1:
            raise ValueError(f"Event {(a, b, t)} has a non-positive index")
        if a > b:
            raise ValueError(f"Event {(a, b, t)} points forward in time (a > b)")
        if m is not None and t > m:
            raise ValueError(f"Event {(a, b, t)} uses slot {t} but m = {m}")
        if n is not None and b > n:
            raise ValueError(f"Event {(a, b, t)} needs vertex {b} but the graph has {n}")
        if (b, t) in seen:
            raise ValueError(f"Slot {t} of vertex {b} appears in more than one event")
        seen.add((b, t))


def eq31_probability(
    params: GpmParams,
    events: Sequence[Event],
    geometry_prob: float,
    literal: bool = False,
) -> float:
    """Leading-order probability that every listed slot event holds.

    Each event (a, b, t) contributes
        ((1+delta) m + #{earlier events with the same target})
        / ((2+delta) m p) * b^(-(1+delta)/(2+delta)) * a^(-1/(2+delta)),
    and the product is multiplied by `geometry_prob`, the probability of
    the positional constraints (p for a single edge). With `literal` the
    per-event 1/p is left out.
    """
    validate_events(events, m=params.m)
    if not 0 < geometry_prob <= 1:
        raise ValueError(f"geometry_prob must lie in (0, 1], got {geometry_prob}")
    m, delta = params.m, params.delta
    normalizer = (2 + delta) * m * (1.0 if literal else params.p)
    value = geometry_prob
    targets_so_far: Dict[int, int] = {}
    for a, b, _ in events:
        repeats = targets_so_far.get(a, 0)
        value *= (
            ((1 + delta) * m + repeats)
            / normalizer
            * b ** (-(1 + delta) / (2 + delta))
            * a ** (-1.0 / (2 + delta))
        )
        targets_so_far[a] = repeats + 1
    return value


def predict_all(
    params: GpmParams,
    n: int,
    fp: Optional[float] = None,
    F: Optional[float] = None,
    eps: float = DEFAULT_EPSILON,
) -> List[Prediction]:
    """Every predictor that applies to (params, n)"""
    predictions: List[Prediction] = []
    if fp is None and params.p == 1.0:
        fp = 1.0
    if fp is not None and params.is_indicator:
        predictions.append(Prediction("triangle_slope", triangle_slope(params, fp), "slope of T_n vs log n"))
        predictions.append(Prediction("pam_ratio", pam_ratio(fp, params.p), "T_n(GPM) / T_n(PAM)"))
    if F is not None:
        predictions.append(Prediction("triangle_slope_kernel", triangle_slope_kernel(params, F), "slope of T_n vs log n"))
    predictions.append(
        Prediction("triangle_pam_reference", triangle_expectation_pam_reference(params, n), "PAM T_n at n")
    )
    predictions.append(Prediction("max_degree_exponent", max_degree_exponent(params), "exponent of max degree vs n"))
    predictions.append(Prediction("max_degree_scale", max_degree_scale(params, n), "max degree normalisation at n"))
    if params.m >= 2:
        predictions.append(Prediction("connectivity_scale", connectivity_scale(params, n), "scale variable x"))
    predictions.append(Prediction("expected_L", expected_L(params, n), "E[L(n)]"))
    predictions.append(Prediction("expected_L_exact", expected_L(params, n, exact=True), "finite-n E[L(n)]"))
    low, high = concentration_band(params, n, eps)
    predictions.append(Prediction("L_band_low", low, f"concentration band, eps={eps}"))
    predictions.append(Prediction("L_band_high", high, f"concentration band, eps={eps}"))
    predictions.append(
        Prediction("isolation_probability", isolation_probability(params, n), "P(vertex n isolated on arrival)")
    )
    return predictions
