"""
Orchestrator
Wires ingestion, estimation, evaluation and probes together for each CLI workflow
"""

import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, TextIO, Union

import pandas as pd
from loguru import logger

from core.config import RunConfig, Settings
from core.models import PROBE_COLUMNS, REPORT_COLUMNS, LocalCounts, ProbeResult, StreamStats, TrialReport
from triangles.estimators.export import counts_frame, write_counts_csv
from triangles.eval_harness import probes, synthetic
from triangles.eval_harness.trials import mean_report, oracle_for, run_estimator, run_trials
from triangles.oracle.exact import degrees
from triangles.stream_core.edges import Edge
from triangles.stream_core.ingest import NodeInterner, read_edge_file, write_edge_file
from triangles.stream_core.preprocess import preprocess_multi, preprocess_simple, shuffle_stream, stream_stats

Target = Union[str, Path, TextIO]


@dataclass
class LoadedStream:
    """An edge file after preprocessing, with the token table needed for export"""
    edges: List[Edge]
    interner: NodeInterner
    stats: StreamStats


@dataclass
class EstimateResult:
    counts: LocalCounts
    memory: Optional[int]
    peak_size: int
    wall_ms: float
    stats: StreamStats


@dataclass
class EvaluationResult:
    reports: List[TrialReport] = field(default_factory=list)

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame([r.to_row() for r in self.reports], columns=REPORT_COLUMNS)


class Orchestrator:
    """
    Runs one workflow per CLI subcommand. Library code below this layer never
    prints; results come back as models and CSV goes to the requested target.
    """

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or Settings()

    def load(self, path: Path, multigraph: bool, shuffle: bool = False, seed: int = 0) -> LoadedStream:
        pairs, interner = read_edge_file(path)
        edges = list(preprocess_multi(pairs) if multigraph else preprocess_simple(pairs))
        if shuffle:
            edges = shuffle_stream(edges, seed)
        stats = stream_stats(edges)
        logger.info(f"Loaded {path}: {stats.summary()}")
        return LoadedStream(edges=edges, interner=interner, stats=stats)

    def _load_for(self, run: RunConfig) -> LoadedStream:
        if run.input is None:
            raise ValueError("--input is required")
        return self.load(run.input, run.variant.is_multigraph, run.shuffle, run.seed)

    def preprocess(self, source: Path, target: Target, mode: str) -> StreamStats:
        """Write the simplified (or canonicalized multigraph) edge list"""
        if mode not in ("simple", "multi"):
            raise ValueError(f"mode must be 'simple' or 'multi', got {mode!r}")
        stream = self.load(source, multigraph=mode == "multi")
        write_edge_file(target, stream.edges, stream.interner)
        return stream.stats

    def estimate(self, run: RunConfig, target: Optional[Target] = None) -> EstimateResult:
        stream = self._load_for(run)
        memory = None if run.variant.is_mascot else run.resolve_memory(stream.stats)
        config = run.estimator_config(memory=memory)
        result = run_estimator(stream.edges, config)
        counts = result.estimate
        if target is not None:
            write_counts_csv(target, counts, stream.interner, self.settings.significant_digits)
        logger.info(
            f"{run.variant.value}: M={memory} peak |D|={result.estimator.peak_size} wall={result.wall_ms:.1f}ms"
        )
        return EstimateResult(counts=counts, memory=memory, peak_size=result.estimator.peak_size,
                              wall_ms=result.wall_ms, stats=stream.stats)

    def evaluate(self, run: RunConfig, target: Optional[Target] = None) -> EvaluationResult:
        """Per-trial reports followed by the mean row"""
        stream = self._load_for(run)
        memory = None if run.variant.is_mascot else run.resolve_memory(stream.stats)
        config = run.estimator_config(memory=memory)
        truth = oracle_for(run.variant, stream.edges)
        summary = run_trials(stream.edges, config, run.trials, truth=truth,
                             max_workers=self.settings.max_workers, progress=self.settings.progress)
        result = EvaluationResult(reports=summary.reports + [mean_report(summary)])
        if target is not None:
            self._write_frame(result.frame(), target)
        return result

    def sweep(self, run: RunConfig, xi_list: Sequence[float], delta_list: Sequence[float],
              target: Optional[Target] = None) -> EvaluationResult:
        """Cross product of memory proportions and decaying factors, one row per seed"""
        stream = self._load_for(run)
        truth = oracle_for(run.variant, stream.edges)
        deltas = list(delta_list) if run.variant.is_smoothed else [0.0]
        result = EvaluationResult()
        for memory_xi in xi_list:
            for delta in deltas:
                if run.variant.is_mascot:
                    config = run.model_copy(update={"p": memory_xi}).estimator_config()
                else:
                    config = run.estimator_config(memory=run.resolve_memory(stream.stats, memory_xi), delta=delta)
                summary = run_trials(stream.edges, config, run.trials, truth=truth,
                                     max_workers=self.settings.max_workers, progress=self.settings.progress)
                result.reports.extend(summary.reports)
        if target is not None:
            self._write_frame(result.frame(), target)
        return result

    def scatter(self, run: RunConfig, target: Optional[Target] = None) -> pd.DataFrame:
        """node,degree,estimate rows for degree-vs-triangle plots"""
        stream = self._load_for(run)
        memory = None if run.variant.is_mascot else run.resolve_memory(stream.stats)
        counts = run_estimator(stream.edges, run.estimator_config(memory=memory)).estimate
        frame = counts_frame(counts, stream.interner, self.settings.significant_digits, degrees=degrees(stream.edges))
        if target is not None:
            self._write_frame(frame, target)
        return frame

    def probe(self, kind: str, run: RunConfig, t_close: int, length: int, multiplicity: int = 1,
              t_query: Optional[int] = None) -> List[ProbeResult]:
        """Expectation/variance probes on a single-triangle stream, or the threshold search"""
        if kind == "threshold":
            return probes.probe_threshold(int(run.memory), run.delta)

        if run.input is not None:
            stream = self._load_for(run)
            edges, triangle = stream.edges, self._probe_triangle(stream)
        else:
            edges = synthetic.probe_stream(t_close, length, multiplicity)
            if not run.variant.is_multigraph:
                # repeated filler edges collapse to one occurrence each
                edges = list(preprocess_simple(edges))
            triangle = synthetic.PROBE_TRIANGLE
        config = run.estimator_config(memory=run.memory)
        runner = {"expectation": probes.probe_expectation, "variance": probes.probe_variance}.get(kind)
        if runner is None:
            raise ValueError(f"unknown probe kind {kind!r}")
        start = time.perf_counter()
        result = runner(edges, triangle, config, run.trials, t_query=t_query,
                        max_workers=self.settings.max_workers, progress=self.settings.progress)
        logger.info(f"{kind} probe finished in {(time.perf_counter() - start):.1f}s")
        return [result]

    @staticmethod
    def _probe_triangle(stream: LoadedStream):
        # tokens 0, 1, 2 name the probed triangle in a probe edge file
        return tuple(sorted(stream.interner.intern(token) for token in ("0", "1", "2")))

    def generate(self, kind: str, target: Target, nodes: int = 40, p: float = 0.3, attach: int = 10,
                 multiplicity: int = 5, clique: int = 12, t_close: int = 30, length: int = 60,
                 seed: int = 0) -> StreamStats:
        """Write a synthetic edge list"""
        clique_members: Sequence[int] = ()
        if kind == "er":
            edges = synthetic.erdos_renyi_edges(nodes, p, seed)
        elif kind == "ba":
            edges = synthetic.preferential_attachment_edges(nodes, attach, seed)
        elif kind == "multi":
            edges = synthetic.duplicate_stream(synthetic.erdos_renyi_edges(nodes, p, seed), multiplicity, seed)
        elif kind == "clique":
            edges, clique_members = synthetic.planted_clique_edges(nodes, p, clique, seed=seed)
        elif kind == "probe":
            edges = synthetic.probe_stream(t_close, length, multiplicity)
        else:
            raise ValueError(f"unknown generator {kind!r}")
        size = max((node for edge in edges for node in edge), default=-1) + 1
        write_edge_file(target, edges, NodeInterner.identity(size))
        if clique_members:
            logger.info(f"planted clique on nodes {list(clique_members)}")
        return stream_stats(edges)

    @staticmethod
    def _write_frame(frame: pd.DataFrame, target: Target) -> None:
        frame.to_csv(target, index=False, lineterminator="\n")

    @staticmethod
    def probe_frame(results: Sequence[ProbeResult]) -> pd.DataFrame:
        return pd.DataFrame([r.to_row() for r in results], columns=PROBE_COLUMNS)
