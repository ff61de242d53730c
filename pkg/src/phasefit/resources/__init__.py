"""MCP resources for phasefit reference data."""
