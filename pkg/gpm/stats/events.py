"""Empirical frequency of slot events across an ensemble"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..core.records import GraphRecord
from ..theory.predictions import Event, validate_events


@dataclass(frozen=True)
class EventFrequency:
    frequency: float
    stderr: float
    replicas: int
    hits: int


def edge_event_frequency(ensemble: Sequence[GraphRecord], events: Sequence[Event]) -> EventFrequency:
    """Fraction of graphs in which every event (a, b, t), i.e. v_{b,t} = V_a, holds"""
    if not ensemble:
        raise ValueError("Event frequency needs at least one graph")
    first = ensemble[0].params
    for graph in ensemble:
        if graph.params.to_dict() != first.to_dict():
            raise ValueError("All graphs of an ensemble must share parameters")
        validate_events(events, m=first.m, n=graph.n)

    hits = sum(
        all(graph.edge_target(b, t) == a for a, b, t in events)
        for graph in ensemble
    )
    replicas = len(ensemble)
    frequency = hits / replicas
    stderr = float(np.sqrt(frequency * (1.0 - frequency) / replicas))
    return EventFrequency(frequency=frequency, stderr=stderr, replicas=replicas, hits=int(hits))
