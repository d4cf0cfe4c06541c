"""Command-line entry point for mcera-miner."""

from __future__ import annotations

import sys
from contextlib import suppress


def main() -> None:
    """Run the CLI and exit with its status code."""
    from .cli import run

    code = 130
    with suppress(KeyboardInterrupt):
        code = run()
    sys.exit(code)


if __name__ == "__main__":
    main()
