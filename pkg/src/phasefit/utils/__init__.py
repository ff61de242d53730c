"""Utilities for phasefit."""
