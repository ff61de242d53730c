"""phasefit MCP Server - Entry point."""

import sys

from .application import mcp
from .dependencies import get_config


def register() -> None:
    """Import tool and resource modules so their decorators run."""
    from .tools import estimation  # noqa: F401
    from .tools import metrics  # noqa: F401
    from .tools import noise  # noqa: F401
    from .tools import states  # noqa: F401

    from .resources import phasefit_resources  # noqa: F401


def main() -> None:
    """Entry point for the phasefit MCP server."""
    try:
        register()

        # Run server with streamable-http transport
        config = get_config()
        mcp.run(transport="streamable-http", host=config.host, port=config.port)
    except Exception as e:
        print(f"Failed to start phasefit MCP server: {e}", file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    main()
