"""FastMCP tool server modules for mcera-miner.

- base: server instance and lifespan resources
- common: dataset cache, error payloads, run execution
- mining: the mining and bound tools
"""

__all__ = ["base", "common", "mining"]
