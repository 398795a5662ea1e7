"""
Multi-seed trial runner.

Trial i uses seed + i and hash_seed + i. Trials may run in worker processes;
results are always reduced in trial order so the output does not depend on
the number of workers.
"""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from tqdm import tqdm

from core.config import EstimatorConfig
from core.models import LocalCounts, StreamStats, TrialReport, TrialSummary, Variant
from triangles.estimators.base import TriangleEstimator
from triangles.estimators.factory import create_estimator
from triangles.eval_harness.metrics import mre, xi
from triangles.oracle.exact import exact_local_binary, exact_local_simple, exact_local_weighted
from triangles.stream_core.edges import Edge
from triangles.stream_core.preprocess import stream_stats


@dataclass
class EstimatorRun:
    """Final state of one estimator pass plus the optional query trajectory"""
    estimator: TriangleEstimator
    wall_ms: float
    trajectory: List[Tuple[int, LocalCounts]] = field(default_factory=list)

    @property
    def estimate(self) -> LocalCounts:
        return self.estimator.query()


@dataclass
class TrialOutcome:
    index: int
    seed: int
    estimate: LocalCounts
    mre: float
    wall_ms: float
    peak_size: int


def oracle_for(variant: Variant, edges: Sequence[Edge]) -> LocalCounts:
    """Ground truth matching the variant's counting semantics"""
    if variant.is_weighted:
        return exact_local_weighted(edges)
    if variant.is_multigraph:
        return exact_local_binary(edges)
    return exact_local_simple(set(edges))


def run_estimator(edges: Sequence[Edge], config: EstimatorConfig, track_every: Optional[int] = None) -> EstimatorRun:
    """Stream the edges once; with track_every=k, record query() every k events"""
    estimator = create_estimator(config)
    trajectory: List[Tuple[int, LocalCounts]] = []
    start = time.perf_counter()
    if track_every:
        for edge in edges:
            estimator.process(edge)
            if estimator.T % track_every == 0:
                trajectory.append((estimator.T, estimator.query()))
    else:
        for edge in edges:
            estimator.process(edge)
    wall_ms = (time.perf_counter() - start) * 1000.0
    return EstimatorRun(estimator=estimator, wall_ms=wall_ms, trajectory=trajectory)


# Worker-process state, installed once per worker by _init_worker
_WORKER_EDGES: Sequence[Edge] = ()
_WORKER_TRUTH: Mapping[int, float] = {}


def _init_worker(edges: Sequence[Edge], truth: Mapping[int, float]) -> None:
    global _WORKER_EDGES, _WORKER_TRUTH
    _WORKER_EDGES = edges
    _WORKER_TRUTH = truth


def _run_one(index: int, config: EstimatorConfig, edges: Sequence[Edge], truth: Mapping[int, float]) -> TrialOutcome:
    trial_config = config.for_trial(index)
    run = run_estimator(edges, trial_config)
    estimate = run.estimate
    return TrialOutcome(
        index=index,
        seed=trial_config.seed,
        estimate=estimate,
        mre=mre(estimate, truth) if truth else 0.0,
        wall_ms=run.wall_ms,
        peak_size=run.estimator.peak_size,
    )


def _run_in_worker(task: Tuple[int, EstimatorConfig]) -> TrialOutcome:
    index, config = task
    return _run_one(index, config, _WORKER_EDGES, _WORKER_TRUTH)


def run_trial_outcomes(edges: Sequence[Edge], config: EstimatorConfig, n_trials: int,
                       truth: Mapping[int, float], max_workers: int = 1,
                       progress: bool = False) -> List[TrialOutcome]:
    if n_trials < 1:
        raise ValueError(f"n_trials must be >= 1, got {n_trials}")
    label = f"{config.variant.value} trials"
    if max_workers <= 1 or n_trials == 1:
        indices = tqdm(range(n_trials), desc=label, disable=not progress)
        return [_run_one(i, config, edges, truth) for i in indices]

    tasks = [(i, config) for i in range(n_trials)]
    with ProcessPoolExecutor(max_workers=max_workers, initializer=_init_worker,
                             initargs=(list(edges), dict(truth))) as executor:
        # map preserves submission order
        outcomes = list(tqdm(executor.map(_run_in_worker, tasks), total=n_trials, desc=label,
                             disable=not progress))
    return outcomes


def summarize(outcomes: Sequence[TrialOutcome], config: EstimatorConfig, stats: StreamStats,
              memory_xi: float, keep_samples: bool = False) -> TrialSummary:
    """Per-node mean and standard error of the final queries plus one report per trial"""
    nodes = sorted({node for outcome in outcomes for node in outcome.estimate})
    samples = np.array([[outcome.estimate.get(node, 0.0) for node in nodes] for outcome in outcomes])
    n = len(outcomes)
    means = samples.mean(axis=0) if nodes else np.zeros(0)
    if n > 1 and nodes:
        stderrs = samples.std(axis=0, ddof=1) / np.sqrt(n)
    else:
        stderrs = np.zeros(len(nodes))

    reports = [
        TrialReport(
            variant=config.variant,
            xi=memory_xi,
            delta=config.delta if config.variant.is_smoothed else 0.0,
            J=config.J,
            seed=outcome.seed,
            mre=outcome.mre,
            wall_ms=outcome.wall_ms,
            n_nodes=stats.nodes,
            n_edges=stats.edges,
        )
        for outcome in outcomes
    ]
    return TrialSummary(
        mean={node: float(m) for node, m in zip(nodes, means)},
        stderr={node: float(s) for node, s in zip(nodes, stderrs)},
        reports=reports,
        samples=[outcome.estimate for outcome in outcomes] if keep_samples else None,
    )


def run_trials(edges: Sequence[Edge], config: EstimatorConfig, n_trials: int,
               truth: Optional[Mapping[int, float]] = None, max_workers: int = 1,
               progress: bool = False, keep_samples: bool = False) -> TrialSummary:
    """Run n_trials independent estimations and aggregate them"""
    edges = list(edges)
    stats = stream_stats(edges)
    truth = oracle_for(config.variant, edges) if truth is None else truth
    memory_xi = xi(config.variant, stats, memory=config.memory, p=config.p)

    outcomes = run_trial_outcomes(edges, config, n_trials, truth, max_workers, progress)
    summary = summarize(outcomes, config, stats, memory_xi, keep_samples)
    logger.info(
        f"{config.variant.value}: {n_trials} trials, xi={memory_xi:.4g}, mean MRE={summary.mean_mre:.6g}"
    )
    return summary


def mean_report(summary: TrialSummary) -> TrialReport:
    """Aggregated row with seed=None (printed as 'mean')"""
    first = summary.reports[0]
    return first.model_copy(update={
        "seed": None,
        "mre": summary.mean_mre,
        "wall_ms": sum(r.wall_ms for r in summary.reports) / len(summary.reports),
    })
