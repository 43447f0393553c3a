"""iterroots - polynomial iterative roots over Q(w), with a CLI and an MCP server."""

__version__ = "0.1.0"
