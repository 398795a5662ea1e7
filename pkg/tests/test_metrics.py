import pytest

from core.errors import MetricError
from core.models import StreamStats, Variant
from triangles.eval_harness.metrics import mre, xi


def test_mre_example():
    truth = {1: 3.0, 2: 0.0}
    estimate = {1: 5.0, 2: 1.0}
    # (2/4 + 1/1) / 2
    assert mre(estimate, truth) == pytest.approx(0.75)


def test_mre_exact_is_zero():
    truth = {0: 3.0, 1: 3.0, 2: 3.0, 3: 3.0}
    assert mre(dict(truth), truth) == 0.0


def test_mre_missing_node_counts_as_zero():
    assert mre({}, {1: 1.0}) == pytest.approx(0.5)


def test_mre_on_node_subset():
    truth = {1: 3.0, 2: 0.0}
    assert mre({1: 3.0, 2: 9.0}, truth, nodes=[1]) == 0.0


def test_mre_empty_raises():
    with pytest.raises(MetricError):
        mre({}, {})


def test_xi_simple_and_multigraph():
    stats = StreamStats(nodes=10, edges=200, distinct=100)
    assert xi(Variant.FURL_S, stats, memory=50) == 0.25
    assert xi(Variant.FURL_MB, stats, memory=50) == 0.5
    assert xi(Variant.MASCOT, stats, p=0.3) == 0.3


def test_xi_capped_at_one():
    stats = StreamStats(nodes=3, edges=3, distinct=3)
    assert xi(Variant.FURL_SX, stats, memory=1000) == 1.0


def test_xi_errors():
    with pytest.raises(MetricError):
        xi(Variant.FURL_S, StreamStats(), memory=10)
    with pytest.raises(MetricError):
        xi(Variant.FURL_S, StreamStats(nodes=2, edges=1, distinct=1))
    with pytest.raises(MetricError):
        xi(Variant.MASCOT_C, StreamStats(nodes=2, edges=1, distinct=1))
