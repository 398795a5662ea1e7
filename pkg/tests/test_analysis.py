import pytest

from core.errors import ProbeUnsupportedError
from core.models import Variant
from triangles.eval_harness.analysis import (
    binary_concentration_threshold,
    bucket_of,
    chebyshev_gain,
    concentration_ratio,
    concentration_threshold,
    interval_inclusion_grid,
    k_factor,
    l_factor,
    predicted_expectation,
    predicted_variance,
    q_factor,
    second_moment_factor,
    smoothed_interval_inside,
    threshold_table,
    weighted_concentration_threshold,
)


def test_q_factor_example():
    assert q_factor(100, 50) == pytest.approx(99 * 98 / (50 * 49))


def test_smoothed_variance_example():
    factor = q_factor(100, 50)
    # (1 - 0.5)^2 * (3.96 - 1)
    assert predicted_variance(0.5, 1, factor) == pytest.approx((1 - 0.5) ** 2 * (factor - 1))
    assert predicted_variance(0.5, 1, factor) == pytest.approx(0.74, abs=1e-4)
    assert predicted_expectation(0.5, 1) == 0.5


def test_exact_phase_moments():
    assert predicted_expectation(0.4, 3, exact=True) == 1.0
    assert predicted_variance(0.4, 3, 5.0, exact=True) == 0.0


def test_expectation_approaches_one_with_span():
    values = [predicted_expectation(0.7, span) for span in range(1, 20)]
    assert values == sorted(values)
    assert values[-1] < 1.0


def test_factor_dispatch_by_variant():
    assert second_moment_factor(Variant.FURL_SX, 20, 30, 29, 28) == q_factor(30, 20)
    assert second_moment_factor(Variant.FURL_MB, 20, 30, 29, 28) == k_factor(29, 20)
    assert second_moment_factor(Variant.FURL_MXW, 20, 30, 29, 28) == l_factor(28, 20)
    with pytest.raises(ProbeUnsupportedError):
        second_moment_factor(Variant.MASCOT, 20, 30, 29, 28)


def test_small_buffers_have_no_closed_form():
    with pytest.raises(ProbeUnsupportedError):
        k_factor(30, 6)
    with pytest.raises(ProbeUnsupportedError):
        l_factor(30, 4)


def test_k_and_l_values():
    assert k_factor(30, 20) == pytest.approx(4.44, abs=0.01)
    assert l_factor(29, 20) == pytest.approx(2.32, abs=0.01)


def test_bucket_of():
    assert bucket_of(5, None, 4) == 0
    assert bucket_of(21, 21, 20) == 0
    assert bucket_of(22, 21, 20) == 1
    assert bucket_of(41, 21, 20) == 1
    assert bucket_of(42, 21, 20) == 2


def test_concentration_threshold_for_large_buffer():
    t_star = concentration_threshold(1000, 0.5)
    assert t_star == 1733
    assert 1.72 <= t_star / 1000 <= 1.74


def test_concentration_threshold_is_smallest():
    for M in (10, 37, 200):
        for delta in (0.1, 0.4, 0.7):
            ratio = concentration_ratio(delta)
            t_star = concentration_threshold(M, delta)
            assert q_factor(t_star, M) > ratio
            assert q_factor(t_star - 1, M) <= ratio


def test_threshold_grows_with_delta():
    rows = threshold_table(500, [0.1, 0.3, 0.5, 0.7, 0.9])
    thresholds = [t_star for _, t_star, _ in rows]
    assert thresholds == sorted(thresholds)
    assert rows[2][2] == thresholds[2] / 500


def test_threshold_rejects_bad_input():
    with pytest.raises(ValueError):
        concentration_threshold(2, 0.5)
    with pytest.raises(ValueError):
        concentration_threshold(100, 1.0)


def test_multigraph_thresholds():
    ratio = concentration_ratio(0.5)
    u = binary_concentration_threshold(100, 0.5)
    assert k_factor(u, 100) > ratio >= k_factor(u - 1, 100)
    u = weighted_concentration_threshold(100, 0.5)
    assert l_factor(u, 100) > ratio >= l_factor(u - 1, 100)


def test_ratio_with_span():
    assert concentration_ratio(0.5) == 3.0
    assert concentration_ratio(0.5, span=2) == pytest.approx(1.75 / 0.75)


def test_interval_inclusion_holds_on_grid():
    assert interval_inclusion_grid() == []


def test_interval_inclusion_fails_for_small_factor():
    # X is already concentrated: Var[X] = 0.1
    assert not smoothed_interval_inside(1.1, 0.4, 1)


def test_chebyshev_gain():
    assert chebyshev_gain(10.0, 0.5, 1)
    assert not chebyshev_gain(1.5, 0.5, 1)
    assert not chebyshev_gain(10.0, 0.0, 1)
