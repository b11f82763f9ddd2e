"""Renyi information measures, their variational characterizations and two-sensor testing."""

__version__ = "0.1.0"
