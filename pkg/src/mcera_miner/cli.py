"""Command-line front door for mcera-miner.

Exit codes: 0 on success, 1 for mining and I/O failures (or a failing oracle
suite), 2 for usage errors such as invalid flag combinations.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from typing import Any, TextIO

import numpy as np
from pydantic import ValidationError

from .config import AppConfig, load_config
from .core.dataset import SampleDataset, read_fimi
from .core.models import BoundKind, ExplorationOrder, RunRecord
from .core.oracle import run_oracle_suite
from .errors import ConfigError, MiningError
from .runner import RunMode, RunRequest, run_once
from .utils.file_writer import FileWriter
from .utils.json_to_csv import RecordConverter, render_json
from .utils.output_handler import ResultOutputHandler
from .utils.path_resolver import PathResolver

logger = logging.getLogger(__name__)

_BOUND_CHOICES = {
    "thm33": BoundKind.STANDARD,
    "standard": BoundKind.STANDARD,
    "variance": BoundKind.VARIANCE,
    "one-mcera": BoundKind.ONE_MCERA,
    "massart": BoundKind.MASSART,
}
_ORDER_CHOICES = {"support": ExplorationOrder.SUPPORT_DESC, "bfs": ExplorationOrder.BFS}
_ON_OFF = ("on", "off")


def parse_grid(text: str) -> list[int]:
    """``lo:hi:points`` -> ``points`` log-spaced sample sizes from ``lo`` to ``hi``, deduplicated."""

    try:
        lo, hi, points = (int(part) for part in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("grid must look like lo:hi:points") from None
    if lo < 1 or hi < lo or points < 1:
        raise argparse.ArgumentTypeError("grid needs 1 <= lo <= hi and points >= 1")
    sizes = np.rint(np.geomspace(lo, hi, num=points)).astype(np.int64).tolist()
    return list(dict.fromkeys(int(size) for size in sizes))


def build_parser(config: AppConfig) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcera-miner",
        description="Exact Monte-Carlo Rademacher averages and deviation bounds for itemset mining.",
    )
    parser.add_argument("--dataset", help="FIMI file (one transaction of item ids per line)")
    parser.add_argument("--sample-size", type=int, help="draw this many transactions with replacement")
    parser.add_argument("--grid", type=parse_grid, help="log-spaced sample sizes lo:hi:points")
    parser.add_argument("--n", type=int, default=config.default_n, help="number of sign rows")
    parser.add_argument("--delta", type=float, default=config.default_delta, help="failure probability")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--mode", choices=[mode.value for mode in RunMode], default=RunMode.EXACT.value)
    parser.add_argument("--bound", choices=list(_BOUND_CHOICES))
    parser.add_argument("--theta", type=float, help="frequency threshold (tfp mode)")
    parser.add_argument("--beta", type=float, help="frequency floor of the explored part (hybrid mode)")
    parser.add_argument("--gamma", type=float, help="confidence share of the tail (hybrid mode)")
    parser.add_argument("--max-nodes", type=int, help="node cap fixing beta after the fact (hybrid mode)")
    parser.add_argument("--order", choices=list(_ORDER_CHOICES), default="support")
    parser.add_argument("--centralize", choices=_ON_OFF, default="on")
    parser.add_argument("--include-root", choices=_ON_OFF, default="off")
    parser.add_argument("--output", choices=("json", "csv"), default=config.output_format)
    parser.add_argument("--repeat", type=int, default=1, help="independent seeds seed..seed+R-1")
    parser.add_argument("--workers", type=int, default=1, help="process pool size for batches")
    parser.add_argument("--results-file", help="append CSV rows to this file in the results directory")
    parser.add_argument("--timings", choices=_ON_OFF, default="on" if config.record_timings else "off")
    parser.add_argument("--instances", type=int, default=200, help="random instances (oracle mode)")
    parser.add_argument("--log-level", default=config.log_level)
    return parser


def _request_from_args(args: argparse.Namespace, config: AppConfig) -> RunRequest:
    gamma = args.gamma
    if gamma is None and args.mode == RunMode.HYBRID:
        gamma = config.default_gamma
    return RunRequest(
        mode=RunMode(args.mode),
        bound=_BOUND_CHOICES[args.bound] if args.bound else None,
        n=args.n,
        delta=args.delta,
        theta=args.theta,
        beta=args.beta,
        gamma=gamma,
        max_nodes=args.max_nodes,
        order=_ORDER_CHOICES[args.order],
        centralize=args.centralize == "on",
        include_root=args.include_root == "on",
        timings=args.timings == "on",
        debug_checks=config.debug_checks,
    )


def _run_job(job: tuple[RunRequest, SampleDataset, int | None, int]) -> tuple[RunRecord, dict[str, Any]]:
    request, source, size, seed = job
    return run_once(request, source, size, seed)


def run_batch(
    request: RunRequest,
    source: SampleDataset,
    sizes: Sequence[int | None],
    seeds: Sequence[int],
    workers: int = 1,
) -> list[tuple[RunRecord, dict[str, Any]]]:
    """Every (size, seed) pair, returned in that order whatever the pool size."""

    jobs = [(request, source, size, seed) for size in sizes for seed in seeds]
    if workers <= 1 or len(jobs) <= 1:
        return [_run_job(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_job, jobs))


def _fail(stream: TextIO, error: MiningError | OSError) -> None:
    if isinstance(error, MiningError):
        payload = error.to_dict()
    else:
        payload = {"error": {"code": "IO_ERROR", "message": str(error), "details": {}}}
    stream.write(render_json(payload) + "\n")


def run(
    argv: Sequence[str] | None = None,
    *,
    stdout: TextIO | None = None,
    stderr: TextIO | None = None,
) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    config = load_config()
    parser = build_parser(config)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    logging.basicConfig(level=str(args.log_level).upper(), stream=err, format="%(levelname)s %(name)s: %(message)s")

    if args.repeat < 1 or args.workers < 1:
        err.write("usage error: --repeat and --workers must be >= 1\n")
        return 2

    if args.mode == RunMode.ORACLE:
        report = run_oracle_suite(instances=args.instances, seed=args.seed)
        out.write(render_json({"oracle": report.model_dump(), "passed": report.passed}) + "\n")
        return 0 if report.passed else 1

    if not args.dataset:
        err.write("usage error: --dataset is required for this mode\n")
        return 2
    if args.grid and args.sample_size is not None:
        err.write("usage error: --grid and --sample-size are exclusive\n")
        return 2
    if args.sample_size is not None and args.sample_size < 0:
        err.write("usage error: --sample-size must be >= 0\n")
        return 2

    try:
        request = _request_from_args(args, config)
    except (ValidationError, ConfigError) as exc:
        err.write(f"usage error: {exc}\n")
        return 2

    sizes: list[int | None] = args.grid or [args.sample_size]
    seeds = list(range(args.seed, args.seed + args.repeat))
    handler = ResultOutputHandler(
        config,
        RecordConverter(),
        PathResolver(config.results_directory),
        FileWriter(),
    )
    try:
        source = read_fimi(args.dataset)
        results = run_batch(request, source, sizes, seeds, workers=args.workers)
        handler.handle(results, stream=out, format=args.output, results_file=args.results_file)
    except (MiningError, OSError) as exc:
        logger.error("Run failed: %s", exc)
        _fail(err, exc)
        return 1
    return 0


__all__ = ["build_parser", "parse_grid", "run", "run_batch"]
