"""
Per-node unbiasedness of the unsmoothed estimators against the exact oracle.
"""

import math

import pytest

from core.models import Variant
from tests.conftest import make_config
from triangles.eval_harness.synthetic import duplicate_stream, preferential_attachment_edges
from triangles.eval_harness.trials import oracle_for, run_trials

pytestmark = pytest.mark.montecarlo

TRIALS = 2000
SEEDS = 10


def _check_unbiased(stream, config):
    truth = oracle_for(config.variant, stream)
    summary = run_trials(stream, config, TRIALS, truth=truth)
    for node, expected in truth.items():
        mean = summary.mean.get(node, 0.0)
        stderr = summary.stderr.get(node, 0.0)
        if stderr == 0.0:
            assert mean == pytest.approx(expected)
        else:
            assert abs(mean - expected) < 4.5 * stderr, (node, mean, expected, stderr)


def test_furl_s_unbiased(er40):
    _check_unbiased(er40, make_config(Variant.FURL_S, math.ceil(len(er40) / 4), seed=100))


def test_furl_mb_unbiased(er40_multi):
    M = math.ceil(len(set(er40_multi)) / 4)
    _check_unbiased(er40_multi, make_config(Variant.FURL_MB, M, hash_seed=200))


def test_furl_mw_unbiased(er40_multi):
    M = math.ceil(len(set(er40_multi)) / 4)
    _check_unbiased(er40_multi, make_config(Variant.FURL_MW, M, hash_seed=300))


@pytest.mark.parametrize("variant", [Variant.MASCOT, Variant.MASCOT_C])
def test_mascot_unbiased(variant, er40):
    _check_unbiased(er40, make_config(variant, p=0.25, seed=400))


SMOOTHING_PAIRS = [
    (Variant.FURL_SX, Variant.FURL_S),
    (Variant.FURL_MXB, Variant.FURL_MB),
    (Variant.FURL_MXW, Variant.FURL_MW),
]


@pytest.fixture(scope="module")
def scale_free_streams():
    simple = preferential_attachment_edges(1000, 5, seed=1)
    multi = duplicate_stream(preferential_attachment_edges(800, 5, seed=2), 3, seed=2)
    return simple, multi


@pytest.mark.slow
@pytest.mark.parametrize("xi", [0.1, 0.2, 0.3])
@pytest.mark.parametrize("smoothed,base", SMOOTHING_PAIRS)
def test_smoothing_lowers_error_on_scale_free_graph(scale_free_streams, smoothed, base, xi):
    simple, multi = scale_free_streams
    stream = multi if base.is_multigraph else simple
    total = len(set(stream)) if base.is_multigraph else len(stream)
    M = max(7, math.ceil(xi * total))
    truth = oracle_for(base, stream)

    base_mre = run_trials(stream, make_config(base, M, seed=0, hash_seed=0), SEEDS, truth=truth).mean_mre
    smoothed_mre = min(
        run_trials(stream, make_config(smoothed, M, delta=delta, seed=0, hash_seed=0), SEEDS, truth=truth).mean_mre
        for delta in (0.1, 0.4, 0.7)
    )
    assert smoothed_mre < base_mre, (smoothed_mre, base_mre)
