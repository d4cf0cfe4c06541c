"""FastMCP server for mcera-miner.

Importing the tool modules registers their tools with the server instance.
"""

from __future__ import annotations

from .servers import mining as _mining  # noqa: F401
from .servers.base import mcp


def run_server():
    """Run the FastMCP server."""
    mcp.run()


__all__ = ["mcp", "run_server"]
