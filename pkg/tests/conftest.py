"""Shared fixtures"""

from typing import List, Tuple

import numpy as np
import pytest

from gpm.core.params import GpmParams
from gpm.core.records import GraphRecord
from gpm.generator.streams import make_rng
from gpm.geometry.sphere import sample_uniform_array


def build_graph(m: int, n: int, edges: List[Tuple[int, int, int]], p: float = 1.0, seed: int = 0) -> GraphRecord:
    """GraphRecord from explicit (source, slot, target) triples; unlisted slots become self-loops"""
    given = {(source, slot): target for source, slot, target in edges}
    full = [(b, t, given.get((b, t), b)) for b in range(1, n + 1) for t in range(1, m + 1)]
    positions = sample_uniform_array(2, n, make_rng(seed))
    return GraphRecord.from_edges(GpmParams(m=m, delta=1.0, p=p), positions, full, seed=seed)


@pytest.fixture
def rng():
    return make_rng(12345)


@pytest.fixture
def pam_params():
    return GpmParams(m=2, delta=1.0, p=1.0)


@pytest.fixture
def geo_params():
    return GpmParams(m=2, delta=1.0, p=0.3)


@pytest.fixture
def triangle_graph():
    """Edges 2->1, 3->1, 3->2 with m=2; the remaining slots are self-loops"""
    return build_graph(m=2, n=3, edges=[(2, 1, 1), (3, 1, 1), (3, 2, 2)])


@pytest.fixture
def random_graphs():
    """Small random multigraphs respecting target <= source"""
    rng = np.random.default_rng(2024)
    graphs = []
    for case in range(100):
        n = int(rng.integers(1, 60))
        m = int(rng.integers(1, 4))
        edges = []
        for b in range(1, n + 1):
            for t in range(1, m + 1):
                # bias towards self-loops so that some graphs are disconnected
                target = b if rng.random() < 0.4 else int(rng.integers(1, b + 1))
                edges.append((b, t, target))
        graphs.append(build_graph(m=m, n=n, edges=edges, seed=case))
    return graphs
