import math

import pytest

from core.models import Variant
from tests.conftest import make_config
from triangles.estimators.factory import create_estimator
from triangles.estimators.smoothing import DecayingAverage
from triangles.eval_harness.synthetic import probe_stream
from triangles.eval_harness.trials import run_estimator

PAIRS = [(Variant.FURL_SX, Variant.FURL_S), (Variant.FURL_MXB, Variant.FURL_MB), (Variant.FURL_MXW, Variant.FURL_MW)]


def _stream_for(variant, er40, er40_multi):
    return er40_multi if variant.is_multigraph else er40


def _memory_for(stream):
    return math.ceil(len(set(stream)) / 4)


def test_seed_copies_counts():
    avg = DecayingAverage(0.5, bucket=4)
    avg.start(5, {1: 2.0})
    avg.update(5, {1: 2.0})
    assert avg.tau == {1: 2.0}


def test_boundary_blend():
    avg = DecayingAverage(0.5, bucket=4)
    avg.start(5, {1: 10.0})
    avg.update(5, {1: 10.0})
    avg.update(9, {1: 20.0})
    assert avg.tau == {1: 15.0}


def test_non_boundary_leaves_average():
    avg = DecayingAverage(0.5, bucket=4)
    avg.start(5, {1: 10.0})
    avg.update(5, {1: 10.0})
    avg.update(7, {1: 20.0})
    assert avg.tau == {1: 10.0}


def test_mid_bucket_query():
    avg = DecayingAverage(0.4, bucket=4)
    avg.start(5, {1: 5.0})
    avg.update(5, {1: 5.0})
    assert avg.query(7, {1: 10.0}, exact=False)[1] == pytest.approx(8.0)
    assert avg.is_boundary(9)
    assert avg.query(9, {1: 10.0}, exact=False) == {1: 5.0}


def test_query_before_overflow_is_raw():
    avg = DecayingAverage(0.4, bucket=4)
    assert avg.query(3, {1: 7.0}, exact=True) == {1: 7.0}
    avg.start(5, {1: 7.0})
    assert avg.query(5, {1: 7.0}, exact=False) == {1: 7.0}


def test_unseen_node_queries_zero(k3):
    est = create_estimator(make_config(Variant.FURL_SX, 10, delta=0.4)).feed(k3)
    assert est.query().get(99, 0.0) == 0.0


@pytest.mark.parametrize("smoothed,base", PAIRS)
def test_delta_zero_matches_base_trajectory(smoothed, base, er40, er40_multi):
    stream = _stream_for(smoothed, er40, er40_multi)
    M = _memory_for(stream)
    y = run_estimator(stream, make_config(smoothed, M, delta=0.0, seed=5, hash_seed=6), track_every=1)
    x = run_estimator(stream, make_config(base, M, seed=5, hash_seed=6), track_every=1)
    assert len(y.trajectory) == len(x.trajectory) == len(stream)
    for (ty, qy), (tx, qx) in zip(y.trajectory, x.trajectory):
        assert ty == tx
        assert qy == qx


@pytest.mark.parametrize("smoothed,base", PAIRS)
def test_lazy_average_equals_dense(smoothed, base, er40, er40_multi):
    stream = _stream_for(smoothed, er40, er40_multi)
    M = _memory_for(stream)
    for bucket in (1, 7, M):
        dense = make_config(smoothed, M, bucket=bucket, delta=0.4, seed=2, hash_seed=3)
        lazy = dense.model_copy(update={"lazy_average": True})
        d = run_estimator(stream, dense, track_every=1)
        lz = run_estimator(stream, lazy, track_every=1)
        for (_, qd), (_, ql) in zip(d.trajectory, lz.trajectory):
            assert qd == ql
        assert d.estimator.tau_hat == lz.estimator.tau_hat


@pytest.mark.parametrize("smoothed,base", PAIRS)
def test_smoothed_query_never_exceeds_raw_count(smoothed, base, er40, er40_multi):
    stream = _stream_for(smoothed, er40, er40_multi)
    est = create_estimator(make_config(smoothed, _memory_for(stream), delta=0.7, seed=1, hash_seed=1))
    for edge in stream:
        est.process(edge)
        query = est.query()
        for node, raw in est.counts.items():
            assert query[node] <= raw * (1 + 1e-12)


def test_overflow_times():
    stream = probe_stream(t_close=30, length=60)
    for variant, t_m in ((Variant.FURL_SX, 21), (Variant.FURL_MXB, 20), (Variant.FURL_MXW, 21)):
        est = create_estimator(make_config(variant, 20, delta=0.4)).feed(stream)
        assert est.t_m == t_m
        assert est.average.t_m == t_m


def test_mxb_seeds_average_with_count_before_overflow_edge():
    # triangle closes at T=3, well inside the exact phase
    stream = probe_stream(t_close=3, length=40)
    est = create_estimator(make_config(Variant.FURL_MXB, 20, delta=0.4)).feed(stream[:21])
    assert est.average.boundaries == 1
    assert est.tau_hat[0] == 1.0
