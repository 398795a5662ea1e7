from typing import List

import pytest

from core.config import EstimatorConfig
from core.models import Variant
from triangles.eval_harness.synthetic import duplicate_stream, erdos_renyi_edges
from triangles.stream_core.edges import Edge


def make_config(variant: Variant, memory=None, **kwargs) -> EstimatorConfig:
    return EstimatorConfig(variant=variant, memory=memory, **kwargs)


@pytest.fixture
def k3() -> List[Edge]:
    return [Edge(1, 2), Edge(1, 3), Edge(2, 3)]


@pytest.fixture
def k4() -> List[Edge]:
    return [Edge(a, b) for a in range(4) for b in range(a + 1, 4)]


@pytest.fixture
def weighted_triangle() -> List[Edge]:
    """e_a three times, e_b twice, e_c once, closing one triangle"""
    ea, eb, ec = Edge(1, 2), Edge(1, 3), Edge(2, 3)
    return [ea, ea, ea, eb, eb, ec]


@pytest.fixture(scope="session")
def er40() -> List[Edge]:
    return erdos_renyi_edges(40, 0.3, seed=7)


@pytest.fixture(scope="session")
def er40_multi(er40) -> List[Edge]:
    return duplicate_stream(er40, 5, seed=11)


@pytest.fixture
def edge_file(tmp_path):
    def write(lines, name="graph.txt"):
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n", encoding="ascii")
        return path
    return write
