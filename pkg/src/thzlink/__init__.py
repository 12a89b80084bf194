"""Terahertz link-budget and deterministic channel-model toolkit."""

__version__ = "0.1.0"
