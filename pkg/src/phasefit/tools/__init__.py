"""MCP tools for phasefit computations."""
