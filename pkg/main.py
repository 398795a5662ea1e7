#!/usr/bin/env python3
"""
furl-triangles
Command-line entry point for fixed-memory streaming local triangle estimation
"""

import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List, Optional

import typer
from loguru import logger
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from core.config import RunConfig, Settings
from core.errors import FurlError
from core.models import Variant
from core.orchestrator import Orchestrator

app = typer.Typer(
    name="furl",
    help="Fixed-memory local triangle estimation over simple and multigraph edge streams",
    add_completion=False,
    no_args_is_help=True,
)

console = Console()
err_console = Console(stderr=True)

EXIT_OK = 0
EXIT_PROBE_FAILED = 1
EXIT_ERROR = 2


def configure_logging(level: str) -> None:
    """Single stderr sink so logs never mix into CSV on stdout"""
    logger.remove()
    logger.add(sys.stderr, level=level.upper(), format="{time:HH:mm:ss} | {level: <7} | {name} - {message}")


@contextmanager
def cli_errors() -> Iterator[None]:
    """Map library errors to a red message and exit code 2"""
    try:
        yield
    except ValidationError as e:
        messages = "; ".join(err["msg"] for err in e.errors())
        err_console.print(f"[red]config error:[/red] {messages}", highlight=False)
        raise typer.Exit(EXIT_ERROR)
    except (FurlError, ValueError, OSError) as e:
        err_console.print(f"[red]error:[/red] {e}", highlight=False)
        raise typer.Exit(EXIT_ERROR)


def _settings() -> Settings:
    return Settings()


def _run_config(settings: Settings, **flags) -> RunConfig:
    """Flags override Settings defaults"""
    defaults = {
        "delta": settings.default_delta,
        "trials": settings.default_trials,
        "seed": settings.default_seed,
        "hash_seed": settings.default_hash_seed,
    }
    values = {key: value for key, value in flags.items() if value is not None}
    for key, value in defaults.items():
        values.setdefault(key, value)
    return RunConfig(**values)


def _csv_target(output: Optional[Path]):
    return output if output is not None else sys.stdout


def _info_console(output: Optional[Path]) -> Console:
    # CSV on stdout pushes human-readable summaries to stderr
    return console if output is not None else err_console


def _parse_floats(text: str) -> List[float]:
    try:
        return [float(token) for token in text.split(",") if token.strip()]
    except ValueError:
        raise typer.BadParameter(f"expected a comma-separated list of numbers, got {text!r}")


@app.callback()
def main(log_level: Optional[str] = typer.Option(None, "--log-level", help="Override FURL_LOG_LEVEL")):
    configure_logging(log_level or _settings().log_level)


@app.command()
def preprocess(
    input: Path = typer.Option(..., "--input", help="Raw edge list"),
    output: Optional[Path] = typer.Option(None, "--output", help="Destination edge list (default stdout)"),
    mode: str = typer.Option("simple", "--mode", help="simple | multi"),
):
    """Remove self-loops and direction (and duplicates in simple mode)"""
    with cli_errors():
        stats = Orchestrator(_settings()).preprocess(input, _csv_target(output), mode)
        _info_console(output).print(stats.summary(), highlight=False)


@app.command()
def estimate(
    input: Path = typer.Option(..., "--input"),
    output: Optional[Path] = typer.Option(None, "--output"),
    variant: Variant = typer.Option(Variant.FURL_SX, "--variant"),
    memory: Optional[int] = typer.Option(None, "--memory", help="Buffer size M"),
    xi: Optional[float] = typer.Option(None, "--xi", help="M as a fraction of (distinct) edges"),
    bucket: Optional[int] = typer.Option(None, "--bucket", help="Bucket size J (default M)"),
    delta: Optional[float] = typer.Option(None, "--delta"),
    p: Optional[float] = typer.Option(None, "--p", help="Edge sampling probability (MASCOT)"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    hash_seed: Optional[int] = typer.Option(None, "--hash-seed"),
    shuffle: bool = typer.Option(False, "--shuffle"),
):
    """Stream the file once and write the final node,estimate CSV"""
    with cli_errors():
        settings = _settings()
        run = _run_config(settings, input=input, output=output, variant=variant, memory=memory, xi=xi,
                          bucket=bucket, delta=delta, p=p, seed=seed, hash_seed=hash_seed, shuffle=shuffle)
        result = Orchestrator(settings).estimate(run, _csv_target(output))
        _info_console(output).print(
            f"M={result.memory} peak_buffer={result.peak_size} wall_ms={result.wall_ms:.1f}", highlight=False
        )


@app.command()
def evaluate(
    input: Path = typer.Option(..., "--input"),
    output: Optional[Path] = typer.Option(None, "--output"),
    variant: Variant = typer.Option(Variant.FURL_SX, "--variant"),
    memory: Optional[int] = typer.Option(None, "--memory"),
    xi: Optional[float] = typer.Option(None, "--xi"),
    bucket: Optional[int] = typer.Option(None, "--bucket"),
    delta: Optional[float] = typer.Option(None, "--delta"),
    p: Optional[float] = typer.Option(None, "--p"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    hash_seed: Optional[int] = typer.Option(None, "--hash-seed"),
    trials: Optional[int] = typer.Option(None, "--trials"),
    shuffle: bool = typer.Option(False, "--shuffle"),
):
    """Per-trial and mean MRE against the exact oracle"""
    with cli_errors():
        settings = _settings()
        run = _run_config(settings, input=input, output=output, variant=variant, memory=memory, xi=xi,
                          bucket=bucket, delta=delta, p=p, seed=seed, hash_seed=hash_seed, trials=trials,
                          shuffle=shuffle)
        result = Orchestrator(settings).evaluate(run, _csv_target(output))
        _info_console(output).print(f"mean MRE={result.reports[-1].mre:.6g}", highlight=False)


@app.command()
def sweep(
    input: Path = typer.Option(..., "--input"),
    output: Optional[Path] = typer.Option(None, "--output"),
    variant: Variant = typer.Option(Variant.FURL_SX, "--variant"),
    xi_list: str = typer.Option("0.1,0.2,0.3,0.4,0.5", "--xi-list"),
    delta_list: str = typer.Option("0.1,0.4,0.7", "--delta-list"),
    bucket: Optional[int] = typer.Option(None, "--bucket"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    hash_seed: Optional[int] = typer.Option(None, "--hash-seed"),
    trials: Optional[int] = typer.Option(None, "--trials"),
    shuffle: bool = typer.Option(False, "--shuffle"),
):
    """MRE over the cross product of memory proportions and decaying factors"""
    with cli_errors():
        settings = _settings()
        xis = _parse_floats(xi_list)
        deltas = _parse_floats(delta_list)
        if not xis:
            raise ValueError("--xi-list is empty")
        first = {"p": xis[0]} if variant.is_mascot else {"xi": xis[0]}
        run = _run_config(settings, input=input, output=output, variant=variant, bucket=bucket, seed=seed,
                          hash_seed=hash_seed, trials=trials, shuffle=shuffle, **first)
        result = Orchestrator(settings).sweep(run, xis, deltas, _csv_target(output))
        _info_console(output).print(f"rows={len(result.reports)}", highlight=False)


@app.command()
def scatter(
    input: Path = typer.Option(..., "--input"),
    output: Optional[Path] = typer.Option(None, "--output"),
    variant: Variant = typer.Option(Variant.FURL_SX, "--variant"),
    memory: Optional[int] = typer.Option(None, "--memory"),
    xi: Optional[float] = typer.Option(None, "--xi"),
    bucket: Optional[int] = typer.Option(None, "--bucket"),
    delta: Optional[float] = typer.Option(None, "--delta"),
    p: Optional[float] = typer.Option(None, "--p"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    hash_seed: Optional[int] = typer.Option(None, "--hash-seed"),
    shuffle: bool = typer.Option(False, "--shuffle"),
):
    """node,degree,estimate rows for degree-vs-triangle anomaly plots"""
    with cli_errors():
        settings = _settings()
        run = _run_config(settings, input=input, output=output, variant=variant, memory=memory, xi=xi,
                          bucket=bucket, delta=delta, p=p, seed=seed, hash_seed=hash_seed, shuffle=shuffle)
        frame = Orchestrator(settings).scatter(run, _csv_target(output))
        _info_console(output).print(f"nodes={len(frame)}", highlight=False)


@app.command()
def probe(
    kind: str = typer.Argument(..., help="expectation | variance | threshold"),
    input: Optional[Path] = typer.Option(None, "--input", help="Probe edge list with the triangle on tokens 0 1 2"),
    output: Optional[Path] = typer.Option(None, "--output"),
    variant: Variant = typer.Option(Variant.FURL_SX, "--variant"),
    memory: int = typer.Option(..., "--memory"),
    bucket: Optional[int] = typer.Option(None, "--bucket"),
    delta: Optional[float] = typer.Option(None, "--delta"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    hash_seed: Optional[int] = typer.Option(None, "--hash-seed"),
    trials: Optional[int] = typer.Option(None, "--trials"),
    t_close: int = typer.Option(30, "--t-close", help="Closing time of the probe triangle"),
    length: int = typer.Option(60, "--length", help="Probe stream length"),
    multiplicity: int = typer.Option(1, "--multiplicity", help="Repeats of each filler edge"),
    t_query: Optional[int] = typer.Option(None, "--t-query"),
):
    """Empirical vs predicted moments of a single triangle, or the concentration threshold"""
    with cli_errors():
        settings = _settings()
        run = _run_config(settings, input=input, variant=variant, memory=memory, bucket=bucket, delta=delta,
                          seed=seed, hash_seed=hash_seed, trials=trials)
        orchestrator = Orchestrator(settings)
        results = orchestrator.probe(kind, run, t_close, length, multiplicity, t_query)

        table = Table(title=f"{kind} probe ({variant.value}, M={memory})")
        for column in ("quantity", "empirical", "predicted", "stderr", "pass"):
            table.add_column(column)
        for r in results:
            verdict = "[green]pass[/green]" if r.passed else "[red]FAIL[/red]"
            table.add_row(r.quantity, f"{r.empirical:.6g}", f"{r.predicted:.6g}", f"{r.stderr:.3g}", verdict)
        console.print(table)
        if output is not None:
            orchestrator.probe_frame(results).to_csv(output, index=False, lineterminator="\n")

    if not all(r.passed for r in results):
        raise typer.Exit(EXIT_PROBE_FAILED)


@app.command()
def generate(
    kind: str = typer.Argument(..., help="er | ba | multi | clique | probe"),
    output: Path = typer.Option(..., "--output"),
    nodes: int = typer.Option(40, "--nodes"),
    p: float = typer.Option(0.3, "--p", help="Edge probability (er, multi, clique background)"),
    attach: int = typer.Option(10, "--attach", help="Edges per new node (ba)"),
    multiplicity: int = typer.Option(5, "--multiplicity"),
    clique: int = typer.Option(12, "--clique", help="Planted clique size"),
    t_close: int = typer.Option(30, "--t-close"),
    length: int = typer.Option(60, "--length"),
    seed: int = typer.Option(0, "--seed"),
):
    """Write a synthetic edge list"""
    with cli_errors():
        stats = Orchestrator(_settings()).generate(kind, output, nodes=nodes, p=p, attach=attach,
                                                   multiplicity=multiplicity, clique=clique, t_close=t_close,
                                                   length=length, seed=seed)
        console.print(stats.summary(), highlight=False)


if __name__ == "__main__":
    app()
