"""
Monte-Carlo probes of a single isolated triangle.

A probe stream holds exactly one triangle touching its three nodes, so the
estimate of any of those nodes is the per-triangle estimate itself: X for a
base variant, Y for a smoothed one.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from tqdm import tqdm

from core.config import EstimatorConfig
from core.errors import ProbeInvalidError, ProbeUnsupportedError
from core.models import ProbeResult, TriangleProbe
from triangles.estimators.factory import ESTIMATORS, create_estimator
from triangles.eval_harness import analysis
from triangles.eval_harness.trials import oracle_for
from triangles.stream_core.edges import Edge, timed
from triangles.stream_core.preprocess import distinct_prefix_counts

EXPECTATION_SIGMAS = 3.0
VARIANCE_SIGMAS = 5.0


def build_probe(edges: Sequence[Edge], triangle: Tuple[int, int, int], config: EstimatorConfig,
                t_query: Optional[int] = None) -> TriangleProbe:
    """Locate the triangle's closing time and buckets in a deterministic stream prefix"""
    if config.variant.is_mascot:
        raise ProbeUnsupportedError(f"{config.variant.value} has no bucketed closed form")
    t_query = len(edges) if t_query is None else t_query
    if not 1 <= t_query <= len(edges):
        raise ProbeInvalidError(f"t_query={t_query} is outside a stream of {len(edges)} edges")
    prefix = list(edges[:t_query])

    truth = oracle_for(config.variant, prefix)
    for node in triangle:
        if truth.get(node, 0.0) != 1.0:
            raise ProbeInvalidError(
                f"node {node} has exact count {truth.get(node, 0.0)}; the probed triangle must be its only triangle"
            )

    a, b, c = sorted(triangle)
    sides = {Edge(a, b), Edge(a, c), Edge(b, c)}
    first_seen = {}
    for event in timed(prefix):
        if event.edge in sides and event.edge not in first_seen:
            first_seen[event.edge] = event.time
    t_close = max(first_seen.values())

    distinct = distinct_prefix_counts(prefix)
    overflow = next((T for T, u in enumerate(distinct) if u == config.M + 1), None)
    t_m = None
    if overflow is not None:
        t_m = overflow - ESTIMATORS[config.variant].overflow_lag

    probe = TriangleProbe(
        triangle=(a, b, c),
        observed_node=a,
        t_close=t_close,
        t_m=t_m,
        t_query=t_query,
        bucket_formed=analysis.bucket_of(t_close, t_m, config.J),
        bucket_current=analysis.bucket_of(t_query, t_m, config.J),
        u_at_close=distinct[t_close],
        u_before_close=distinct[t_close - 1],
    )
    logger.debug(
        f"probe {probe.triangle}: T_close={t_close} T_M={t_m} b={probe.bucket_formed} "
        f"B={probe.bucket_current} u={probe.u_at_close}"
    )
    return probe


def _probe_values(edges: Sequence[Edge], config: EstimatorConfig, node: int, indices: Sequence[int]) -> List[float]:
    values = []
    for index in indices:
        estimator = create_estimator(config.for_trial(index))
        estimator.feed(edges)
        values.append(estimator.query().get(node, 0.0))
    return values


_WORKER_EDGES: Sequence[Edge] = ()


def _init_worker(edges: Sequence[Edge]) -> None:
    global _WORKER_EDGES
    _WORKER_EDGES = edges


def _probe_chunk(task: Tuple[EstimatorConfig, int, Sequence[int]]) -> List[float]:
    config, node, indices = task
    return _probe_values(_WORKER_EDGES, config, node, indices)


def sample_probe(edges: Sequence[Edge], probe: TriangleProbe, config: EstimatorConfig, n_trials: int,
                 max_workers: int = 1, progress: bool = False, chunk_size: int = 500) -> np.ndarray:
    """Per-trial estimate of the observed node at t_query; stored on the probe"""
    prefix = list(edges[:probe.t_query])
    chunks = [list(range(i, min(i + chunk_size, n_trials))) for i in range(0, n_trials, chunk_size)]
    label = f"{config.variant.value} probe"
    if max_workers <= 1:
        values: List[float] = []
        for chunk in tqdm(chunks, desc=label, disable=not progress):
            values.extend(_probe_values(prefix, config, probe.observed_node, chunk))
    else:
        tasks = [(config, probe.observed_node, chunk) for chunk in chunks]
        with ProcessPoolExecutor(max_workers=max_workers, initializer=_init_worker, initargs=(prefix,)) as executor:
            values = [v for part in tqdm(executor.map(_probe_chunk, tasks), total=len(tasks), desc=label,
                                         disable=not progress) for v in part]
    probe.samples = values
    return np.asarray(values, dtype=float)


def _effective_delta(config: EstimatorConfig) -> float:
    return config.delta if config.variant.is_smoothed else 0.0


def predicted_moments(probe: TriangleProbe, config: EstimatorConfig) -> Tuple[float, float]:
    """(E, Var) of the probed estimate from the closed forms"""
    exact = probe.bucket_formed == 0
    delta = _effective_delta(config)
    expectation = analysis.predicted_expectation(delta, probe.span, exact)
    if exact:
        return expectation, 0.0
    factor = analysis.second_moment_factor(config.variant, config.M, probe.t_close,
                                           probe.u_at_close, probe.u_before_close)
    return expectation, analysis.predicted_variance(delta, probe.span, factor)


def _within(empirical: float, predicted: float, stderr: float, sigmas: float) -> bool:
    if stderr == 0.0:
        return math.isclose(empirical, predicted, rel_tol=1e-9, abs_tol=1e-12)
    return abs(empirical - predicted) <= sigmas * stderr


def probe_expectation(edges: Sequence[Edge], triangle: Tuple[int, int, int], config: EstimatorConfig,
                      n_trials: int, t_query: Optional[int] = None, max_workers: int = 1,
                      progress: bool = False) -> ProbeResult:
    probe = build_probe(edges, triangle, config, t_query)
    expectation = analysis.predicted_expectation(_effective_delta(config), probe.span,
                                                 exact=probe.bucket_formed == 0)
    samples = sample_probe(edges, probe, config, n_trials, max_workers, progress)
    empirical = float(samples.mean())
    stderr = float(samples.std(ddof=1) / math.sqrt(n_trials)) if n_trials > 1 else 0.0
    return ProbeResult(
        quantity=f"E[{config.variant.value}] span={probe.span}",
        empirical=empirical,
        predicted=expectation,
        stderr=stderr,
        passed=_within(empirical, expectation, stderr, EXPECTATION_SIGMAS),
    )


def variance_stderr(samples: np.ndarray) -> float:
    """Standard error of the sample variance, sqrt((m4 − var²)/n)"""
    n = len(samples)
    if n < 2:
        return 0.0
    centered = samples - samples.mean()
    m4 = float(np.mean(centered ** 4))
    var = float(np.mean(centered ** 2))
    return math.sqrt(max(m4 - var * var, 0.0) / n)


def probe_variance(edges: Sequence[Edge], triangle: Tuple[int, int, int], config: EstimatorConfig,
                   n_trials: int, t_query: Optional[int] = None, max_workers: int = 1,
                   progress: bool = False) -> ProbeResult:
    probe = build_probe(edges, triangle, config, t_query)
    # raises before any sampling when the closed form is unavailable
    _, predicted = predicted_moments(probe, config)
    samples = sample_probe(edges, probe, config, n_trials, max_workers, progress)
    empirical = float(samples.var(ddof=1)) if n_trials > 1 else 0.0
    stderr = variance_stderr(samples)
    return ProbeResult(
        quantity=f"Var[{config.variant.value}] span={probe.span}",
        empirical=empirical,
        predicted=predicted,
        stderr=stderr,
        passed=_within(empirical, predicted, stderr, VARIANCE_SIGMAS),
    )


def probe_threshold(M: int, delta: float) -> List[ProbeResult]:
    """Integer search for T* against the continuous root of (T−1)(T−2) = r·M(M−1)"""
    t_star = analysis.concentration_threshold(M, delta)
    ratio = analysis.concentration_ratio(delta)
    root = 1.5 + math.sqrt(0.25 + ratio * M * (M - 1))
    return [
        ProbeResult(quantity="T*", empirical=float(t_star), predicted=root,
                    passed=t_star - 1 <= root < t_star),
        ProbeResult(quantity="T*/M", empirical=t_star / M, predicted=root / M,
                    passed=abs(t_star - root) <= 1.0),
    ]
