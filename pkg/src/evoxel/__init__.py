"""Headless deterministic voxel world with evolutionary search baselines."""

__version__ = "0.1.0"
