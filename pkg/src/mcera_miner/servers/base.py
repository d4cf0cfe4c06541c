"""FastMCP server base module.

This module creates the FastMCP server instance and lifespan context.
Tool modules import `mcp` from here to register their tools.
"""

from __future__ import annotations

import logging

from dotenv import load_dotenv
from fastmcp import FastMCP
from fastmcp.server.lifespan import lifespan

from ..config import load_config
from ..utils.file_writer import FileWriter
from ..utils.json_to_csv import RecordConverter
from ..utils.output_handler import ResultOutputHandler
from ..utils.path_resolver import PathResolver

logger = logging.getLogger(__name__)


@lifespan
async def mining_lifespan(server: FastMCP):
    """Initialize shared resources for all tools.

    Yields a context dictionary containing:
    - config: AppConfig instance
    - output_handler: ResultOutputHandler for results-file accumulation
    - path_resolver: PathResolver for the results directory
    - datasets: per-session cache of parsed FIMI files keyed by resolved path
    """
    load_dotenv()
    config = load_config()
    path_resolver = PathResolver(config.results_directory)
    output_handler = ResultOutputHandler(config, RecordConverter(), path_resolver, FileWriter())
    datasets: dict[str, object] = {}
    logger.info("mcera-miner tool server starting (results in %s)", path_resolver.root)

    try:
        yield {
            "config": config,
            "output_handler": output_handler,
            "path_resolver": path_resolver,
            "datasets": datasets,
        }
    finally:
        datasets.clear()


mcp = FastMCP(
    name="mcera-miner",
    instructions="""
    This server computes exact Monte-Carlo Rademacher averages of itemset
    families and turns them into bounds on the largest deviation between the
    sample frequency and the true frequency of any itemset.

    Available tools:
    - dataset_stats: size, alphabet and pattern-count bound of a FIMI file
    - supdev_bound: exact or hybrid deviation bound for a (sub)sample
    - mine_true_frequent: itemsets that are frequent in the distribution w.h.p.
    - oracle_check: engine versus brute force on random small instances

    Datasets are FIMI files given by path. Pass results_file to append
    the run records as CSV rows in the results directory.
    """,
    lifespan=mining_lifespan,
)


__all__ = ["mcp"]
