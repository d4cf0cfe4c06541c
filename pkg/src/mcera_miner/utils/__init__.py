"""Utility helpers for mcera-miner."""

from .file_writer import FileWriter
from .json_to_csv import RecordConverter, format_float, render_json
from .output_handler import ResultOutputHandler
from .path_resolver import PathResolver, PathSecurityError
from .seeding import seeded_generator

__all__ = [
    "FileWriter",
    "PathResolver",
    "PathSecurityError",
    "RecordConverter",
    "ResultOutputHandler",
    "format_float",
    "render_json",
    "seeded_generator",
]
